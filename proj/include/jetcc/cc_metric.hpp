#pragma once

// Horizontal curves and the Carnot-Caratheodory distance, computationally:
// piecewise-constant controls on the frame (X_1..X_n, d/du^k_I) integrate
// in closed form (the flow is polynomial in t on each segment), connectivity
// is witnessed by explicit switchback words, and distance estimates come as
// certified sandwiches: an exact projection lower bound and a feasible-path
// upper bound that never exceeds its initialization.

#include "jetcc/jets.hpp"
#include "jetcc/polynomial.hpp"

#include <optional>
#include <vector>

namespace jetcc {

template <class S>
struct ControlSegmentT {
    S duration;           // > 0
    std::vector<S> cx;    // n controls on X_1..X_n
    std::vector<S> cu;    // d_k^n controls on the top layer directions
};

template <class S>
struct HorizontalControlT {
    std::vector<ControlSegmentT<S>> segments;
};

using ControlSegment = ControlSegmentT<double>;
using HorizontalControl = HorizontalControlT<double>;

template <class S>
inline double control_length(const HorizontalControlT<S>& ctrl) {
    double len = 0.0;
    for (const auto& seg : ctrl.segments) {
        double q = 0.0;
        for (const auto& c : seg.cx) q += to_double(c) * to_double(c);
        for (const auto& c : seg.cu) q += to_double(c) * to_double(c);
        len += to_double(seg.duration) * std::sqrt(q);
    }
    return len;
}

// Exact per-segment integration of xdot = c_x, udot^k = c_u,
// udot^j_I = sum_i u^{j+1}_{I+e_i} c_{x,i}: on one segment each coordinate
// is a polynomial in t, filled in from the top layer down.
template <class S>
inline JetPoint<S> integrate_horizontal(const JetPoint<S>& start, const HorizontalControlT<S>& ctrl) {
    const JetLayout& lay = *start.layout;
    const std::size_t topcount = lay.layers[0].size();
    JetPoint<S> cur = start;
    const S zero = scalar_traits<S>::from_int(0);
    for (const auto& seg : ctrl.segments) {
        if (static_cast<int>(seg.cx.size()) != lay.n || seg.cu.size() != topcount)
            throw std::invalid_argument("integrate_horizontal: control arity");
        // coefficient table: per flat u-index, polynomial in t (degree <= k+1)
        std::vector<std::vector<S>> poly(lay.ucount);
        for (std::size_t p = 0; p < topcount; ++p)
            poly[p] = {cur.u[p], seg.cu[p]};
        for (int j = lay.k - 1; j >= 0; --j) {
            std::size_t off = lay.layer_offset[static_cast<std::size_t>(lay.k - j)];
            const auto& mis = lay.layers[static_cast<std::size_t>(lay.k - j)];
            for (std::size_t p = 0; p < mis.size(); ++p) {
                std::vector<S> acc{cur.u[off + p]};
                for (int i = 0; i < lay.n; ++i) {
                    if (seg.cx[static_cast<std::size_t>(i)] == zero) continue;
                    std::size_t up = lay.flat_index(j + 1, mi_add(mis[p], mi_unit(lay.n, i)));
                    const auto& src = poly[up];
                    // integrate src * cx_i and add
                    if (acc.size() < src.size() + 1) acc.resize(src.size() + 1, zero);
                    for (std::size_t m = 0; m < src.size(); ++m)
                        acc[m + 1] = acc[m + 1] + src[m] * seg.cx[static_cast<std::size_t>(i)] /
                                                      scalar_traits<S>::from_int(static_cast<long>(m + 1));
                }
                poly[off + p] = std::move(acc);
            }
        }
        for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
            S v = zero;
            S tp = scalar_traits<S>::from_int(1);
            for (std::size_t m = 0; m < poly[fi].size(); ++m) {
                v = v + poly[fi][m] * tp;
                tp = tp * seg.duration;
            }
            cur.u[fi] = v;
        }
        for (int i = 0; i < lay.n; ++i)
            cur.x[static_cast<std::size_t>(i)] =
                cur.x[static_cast<std::size_t>(i)] + seg.cx[static_cast<std::size_t>(i)] * seg.duration;
    }
    return cur;
}

template <class S>
inline HorizontalControlT<S> concat_controls(const HorizontalControlT<S>& a, const HorizontalControlT<S>& b) {
    HorizontalControlT<S> r = a;
    r.segments.insert(r.segments.end(), b.segments.begin(), b.segments.end());
    return r;
}

// The image of a horizontal path under delta_L is horizontal with all
// controls scaled by L (same durations); its length is exactly L times the
// original.
inline HorizontalControl dilate_control(const HorizontalControl& ctrl, double L) {
    HorizontalControl r = ctrl;
    for (auto& seg : r.segments) {
        for (auto& c : seg.cx) c *= L;
        for (auto& c : seg.cu) c *= L;
    }
    return r;
}

struct CcBudget {
    int segments = 16;   // minimum segment count carried into refinement
    int iters = 200;     // coordinate-descent sweeps
    double rel_tol = 1e-6;
};

struct DistanceEstimate {
    double lower = 0.0;
    double upper = 0.0;
    HorizontalControl witness;
    bool converged = true;
};

// Explicit word from a to b; integrating it from a reproduces b to float
// precision, coordinate by coordinate. Length grows like max(N, N^{k+1}).
HorizontalControl canonical_connect(const JetPoint<double>& a, const JetPoint<double>& b);

// Euclidean distance of the (x, u^k) projections of the left quotient;
// never exceeds any horizontal path length between a and b.
double cc_lower_bound(const JetPoint<double>& a, const JetPoint<double>& b);

// Feasible-path upper bound: initialize (canonical word, or the caller's
// witness), then pattern-search the segment controls, closing the endpoint
// residual with a canonical word at every evaluation. Monotone: the result
// never exceeds the initialization's closed length.
DistanceEstimate cc_upper_bound(const JetPoint<double>& a, const JetPoint<double>& b,
                                const CcBudget& budget = {},
                                const HorizontalControl* init = nullptr);

DistanceEstimate cc_estimate(const JetPoint<double>& a, const JetPoint<double>& b,
                             const CcBudget& budget = {});

// For deg f <= k+1 the jet curve t -> j^k(f) along [x, y] has constant
// controls: one exact horizontal segment from jet(f,x) to jet(f,y). The top
// control is d/dt of the k-th derivatives along the segment, which is
// constant precisely in that degree range.
template <class S>
inline HorizontalControlT<S> jet_curve_control(const Polynomial<S>& f, const std::vector<S>& x,
                                               const std::vector<S>& y, LayoutPtr lay) {
    if (f.degree() > lay->k + 1)
        throw std::invalid_argument("jet_curve_control: needs deg f <= k+1 for constant controls");
    ControlSegmentT<S> seg;
    seg.duration = scalar_traits<S>::from_int(1);
    seg.cx.resize(x.size());
    for (std::size_t m = 0; m < x.size(); ++m) seg.cx[m] = y[m] - x[m];
    const MultiIndex zero(static_cast<std::size_t>(lay->n), 0);
    for (const auto& I : lay->layers[0]) {
        S g = scalar_traits<S>::from_int(0);
        for (int i = 0; i < lay->n; ++i) {
            Polynomial<S> d = partial_mi(f, mi_add(I, mi_unit(lay->n, i)));
            g = g + d.coeff(zero) * seg.cx[static_cast<std::size_t>(i)];
        }
        seg.cu.push_back(g);
    }
    HorizontalControlT<S> ctrl;
    ctrl.segments.push_back(std::move(seg));
    return ctrl;
}

}  // namespace jetcc
