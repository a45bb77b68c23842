#include "jetcc/cc_metric.hpp"

#include <cmath>

namespace jetcc {

namespace {

// Switchback word moving coordinate (j, I) by delta, x-closed, zero net
// effect on layers >= j away from (j, I); residue lands strictly below j.
// Recursion: carry delta one layer up at weight-balanced size, drag it down
// with an X_1 move, undo the carry, undo the move.
void emit_word(const JetLayout& lay, int j, const MultiIndex& I, double delta,
               std::vector<ControlSegment>& out) {
    if (delta == 0.0) return;
    const std::size_t topcount = lay.layers[0].size();
    if (j == lay.k) {
        ControlSegment seg;
        seg.duration = 1.0;
        seg.cx.assign(static_cast<std::size_t>(lay.n), 0.0);
        seg.cu.assign(topcount, 0.0);
        std::size_t pos = lay.flat_index(j, I);  // top layer offsets start at 0
        seg.cu[pos] = delta;
        out.push_back(std::move(seg));
        return;
    }
    int w = lay.k + 1 - j;
    double s = std::pow(std::fabs(delta), 1.0 / w);
    double carried = delta / s;
    MultiIndex up = mi_add(I, mi_unit(lay.n, 0));
    auto xmove = [&](double dir) {
        ControlSegment seg;
        seg.duration = s;
        seg.cx.assign(static_cast<std::size_t>(lay.n), 0.0);
        seg.cx[0] = dir;
        seg.cu.assign(topcount, 0.0);
        out.push_back(std::move(seg));
    };
    emit_word(lay, j + 1, up, carried, out);
    xmove(1.0);
    emit_word(lay, j + 1, up, -carried, out);
    xmove(-1.0);
}

double vec_norm(const std::vector<double>& v) {
    double q = 0.0;
    for (double c : v) q += c * c;
    return std::sqrt(q);
}

// Word from the identity to the pure (zero-x) residual target, sweeping
// layers from the top down; each sweep step recomputes the residual so the
// switchback spill is absorbed by later layers.
void connect_from_identity(const JetPoint<double>& target, std::vector<ControlSegment>& out) {
    const JetLayout& lay = *target.layout;
    const std::size_t topcount = lay.layers[0].size();
    JetPoint<double> cur(target.layout);

    // straight x run
    double xn = vec_norm(target.x);
    if (xn > 0.0) {
        ControlSegment seg;
        seg.duration = xn;
        seg.cx.resize(target.x.size());
        for (std::size_t m = 0; m < target.x.size(); ++m) seg.cx[m] = target.x[m] / xn;
        seg.cu.assign(topcount, 0.0);
        out.push_back(seg);
        HorizontalControl one{{seg}};
        cur = integrate_horizontal(cur, one);
    }

    // straight top-layer run
    {
        JetPoint<double> p = left_quotient(cur, target);
        bool any = false;
        for (std::size_t t = 0; t < topcount; ++t)
            if (p.u[t] != 0.0) any = true;
        if (any) {
            ControlSegment seg;
            seg.duration = 1.0;
            seg.cx.assign(static_cast<std::size_t>(lay.n), 0.0);
            seg.cu.resize(topcount);
            for (std::size_t t = 0; t < topcount; ++t) seg.cu[t] = p.u[t];
            out.push_back(seg);
            HorizontalControl one{{seg}};
            cur = integrate_horizontal(cur, one);
        }
    }

    for (int j = lay.k - 1; j >= 0; --j) {
        std::size_t off = lay.layer_offset[static_cast<std::size_t>(lay.k - j)];
        const auto& mis = lay.layers[static_cast<std::size_t>(lay.k - j)];
        for (std::size_t p = 0; p < mis.size(); ++p) {
            JetPoint<double> res = left_quotient(cur, target);
            double delta = res.u[off + p];
            if (delta == 0.0) continue;
            std::vector<ControlSegment> word;
            emit_word(lay, j, mis[p], delta, word);
            HorizontalControl w{word};
            cur = integrate_horizontal(cur, w);
            out.insert(out.end(), word.begin(), word.end());
        }
    }
}

}  // namespace

HorizontalControl canonical_connect(const JetPoint<double>& a, const JetPoint<double>& b) {
    if (a.layout != b.layout) throw std::invalid_argument("canonical_connect: layout mismatch");
    HorizontalControl ctrl;
    JetPoint<double> c = left_quotient(a, b);
    connect_from_identity(c, ctrl.segments);
    return ctrl;
}

double cc_lower_bound(const JetPoint<double>& a, const JetPoint<double>& b) {
    if (a.layout != b.layout) throw std::invalid_argument("cc_lower_bound: layout mismatch");
    JetPoint<double> q = left_quotient(a, b);
    double s = 0.0;
    for (double v : q.x) s += v * v;
    std::size_t topcount = q.layout->layers[0].size();
    for (std::size_t t = 0; t < topcount; ++t) s += q.u[t] * q.u[t];
    return std::sqrt(s);
}

DistanceEstimate cc_upper_bound(const JetPoint<double>& a, const JetPoint<double>& b,
                                const CcBudget& budget, const HorizontalControl* init) {
    if (a.layout != b.layout) throw std::invalid_argument("cc_upper_bound: layout mismatch");
    LayoutPtr lay = a.layout;
    JetPoint<double> c = left_quotient(a, b);
    JetPoint<double> e = jet_identity<double>(lay);

    HorizontalControl W = init ? *init : canonical_connect(e, c);

    // split the longest pieces until the refinement has room to move
    while (static_cast<int>(W.segments.size()) < budget.segments && !W.segments.empty()) {
        std::size_t pick = 0;
        double best = -1.0;
        for (std::size_t s = 0; s < W.segments.size(); ++s) {
            double q = 0.0;
            for (double v : W.segments[s].cx) q += v * v;
            for (double v : W.segments[s].cu) q += v * v;
            double len = W.segments[s].duration * std::sqrt(q);
            if (len > best) { best = len; pick = s; }
        }
        ControlSegment half = W.segments[pick];
        half.duration *= 0.5;
        W.segments[pick] = half;
        W.segments.insert(W.segments.begin() + static_cast<std::ptrdiff_t>(pick), half);
    }

    // Residuals at float precision are treated as closed: connecting a
    // 1e-15-sized high-weight coordinate would cost its fractional root in
    // length and say nothing about the distance being estimated.
    auto objective = [&](const HorizontalControl& cand, HorizontalControl* closing_out) {
        JetPoint<double> end = integrate_horizontal(e, cand);
        HorizontalControl closing;
        if (!coordinatewise_close(end, c, 1e-12)) closing = canonical_connect(end, c);
        if (closing_out) *closing_out = closing;
        return control_length(cand) + control_length(closing);
    };

    double obj = objective(W, nullptr);
    double scale = std::max(1.0, homogeneous_norm(c));
    double step = 0.25 * scale;
    bool converged = false;

    for (int iter = 0; iter < budget.iters; ++iter) {
        bool improved = false;
        double sweep_start = obj;
        for (std::size_t s = 0; s < W.segments.size(); ++s) {
            auto try_comp = [&](double& comp) {
                double orig = comp;
                for (double d : {step, -step}) {
                    comp = orig + d;
                    double cand = objective(W, nullptr);
                    if (cand < obj) { obj = cand; improved = true; return; }
                }
                comp = orig;
            };
            for (auto& v : W.segments[s].cx) try_comp(v);
            for (auto& v : W.segments[s].cu) try_comp(v);
        }
        if (!improved) {
            step *= 0.5;
            if (step < 1e-9 * scale) { converged = true; break; }
        } else if (sweep_start - obj < budget.rel_tol * std::max(obj, 1e-12) && step < 1e-3 * scale) {
            converged = true;
            break;
        }
    }

    HorizontalControl closing;
    double final_obj = objective(W, &closing);
    DistanceEstimate est;
    est.lower = cc_lower_bound(a, b);
    est.upper = final_obj;
    est.witness = concat_controls(W, closing);
    est.converged = converged;
    return est;
}

DistanceEstimate cc_estimate(const JetPoint<double>& a, const JetPoint<double>& b, const CcBudget& budget) {
    return cc_upper_bound(a, b, budget, nullptr);
}

}  // namespace jetcc
