#pragma once

// Jet coordinates and the group structure they carry.
//
// A point of J^k(R^n) is stored as (x, u^k, ..., u^0) where layer u^j holds
// one coordinate per multi-index of degree j, graded-lex within the layer.
// Products compose the underlying truncated Taylor data:
//   (a . b)_I = b_I + sum_{J >= I} a_J pi(b)^{J-I} / (J-I)!
// with pi(a . b) = pi(a) + pi(b); the coordinate of weight w = k+1-j scales
// as L^w under the dilation delta_L.

#include "jetcc/multiindex.hpp"
#include "jetcc/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace jetcc {

struct JetLayout {
    int n = 0;
    int k = 0;
    // Layers in storage order: j = k, k-1, ..., 0.
    std::vector<std::vector<MultiIndex>> layers;
    std::vector<std::size_t> layer_offset;  // into the flat u vector
    std::size_t ucount = 0;

    // Monomial table: all multi-indices of degree 0..k, graded-lex, used for
    // powers of the base-point displacement.
    std::vector<MultiIndex> monomials;
    std::map<MultiIndex, std::size_t> monomial_pos;

    struct ProductTerm {
        std::size_t flat_j;      // source coordinate a_J
        std::size_t mono_diff;   // monomial index of J-I
        std::uint64_t fact_diff; // (J-I)!
    };
    // For each flat target index I, all J >= I (any layer).
    std::vector<std::vector<ProductTerm>> product_terms;

    int layer_of_flat(std::size_t flat) const {
        for (std::size_t L = 0; L < layers.size(); ++L) {
            if (flat < layer_offset[L] + layers[L].size()) return k - static_cast<int>(L);
        }
        throw std::logic_error("layer_of_flat: index out of range");
    }
    int weight_of_layer(int j) const { return k + 1 - j; }

    std::size_t flat_index(int j, const MultiIndex& I) const {
        std::size_t L = static_cast<std::size_t>(k - j);
        const auto& lay = layers[L];
        for (std::size_t p = 0; p < lay.size(); ++p)
            if (lay[p] == I) return layer_offset[L] + p;
        throw std::invalid_argument("flat_index: no such multi-index");
    }
    const MultiIndex& flat_mi(std::size_t flat) const {
        for (std::size_t L = 0; L < layers.size(); ++L)
            if (flat < layer_offset[L] + layers[L].size())
                return layers[L][flat - layer_offset[L]];
        throw std::logic_error("flat_mi: index out of range");
    }
};

using LayoutPtr = std::shared_ptr<const JetLayout>;

inline LayoutPtr jet_layout(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("jet_layout: need n >= 1 and k >= 1");
    static std::mutex mtx;
    static std::map<std::pair<int, int>, LayoutPtr> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;

    auto lay = std::make_shared<JetLayout>();
    lay->n = n;
    lay->k = k;
    for (int j = k; j >= 0; --j) {
        lay->layer_offset.push_back(lay->ucount);
        lay->layers.push_back(enumerate_multiindices(n, j));
        lay->ucount += lay->layers.back().size();
    }
    for (int d = 0; d <= k; ++d)
        for (auto& I : enumerate_multiindices(n, d)) {
            lay->monomial_pos[I] = lay->monomials.size();
            lay->monomials.push_back(I);
        }
    lay->product_terms.resize(lay->ucount);
    for (std::size_t fi = 0; fi < lay->ucount; ++fi) {
        const MultiIndex& I = lay->flat_mi(fi);
        for (std::size_t fj = 0; fj < lay->ucount; ++fj) {
            const MultiIndex& J = lay->flat_mi(fj);
            if (!mi_geq(J, I)) continue;
            MultiIndex D = mi_sub(J, I);
            lay->product_terms[fi].push_back({fj, lay->monomial_pos.at(D), mi_factorial_u64(D)});
        }
    }
    LayoutPtr out = lay;
    cache[{n, k}] = out;
    return out;
}

template <class S>
struct JetPoint {
    LayoutPtr layout;
    std::vector<S> x;  // n entries
    std::vector<S> u;  // flat, layers k..0

    JetPoint() = default;
    explicit JetPoint(LayoutPtr lay)
        : layout(std::move(lay)),
          x(static_cast<std::size_t>(layout->n), scalar_traits<S>::from_int(0)),
          u(layout->ucount, scalar_traits<S>::from_int(0)) {}

    int n() const { return layout->n; }
    int k() const { return layout->k; }

    S& at(int j, const MultiIndex& I) { return u[layout->flat_index(j, I)]; }
    const S& at(int j, const MultiIndex& I) const { return u[layout->flat_index(j, I)]; }

    bool operator==(const JetPoint& o) const { return x == o.x && u == o.u; }
    bool operator!=(const JetPoint& o) const { return !(*this == o); }
};

template <class S>
inline JetPoint<S> jet_identity(LayoutPtr lay) { return JetPoint<S>(std::move(lay)); }

template <class S>
inline bool is_identity(const JetPoint<S>& a) {
    const S zero = scalar_traits<S>::from_int(0);
    for (auto& v : a.x) if (v != zero) return false;
    for (auto& v : a.u) if (v != zero) return false;
    return true;
}

// Powers pi^M for every monomial M of degree <= k, in layout monomial order.
template <class S>
inline std::vector<S> monomial_powers(const JetLayout& lay, const std::vector<S>& pi) {
    std::vector<S> out;
    out.reserve(lay.monomials.size());
    for (const auto& M : lay.monomials) {
        S v = scalar_traits<S>::from_int(1);
        for (int m = 0; m < lay.n; ++m)
            if (M[static_cast<std::size_t>(m)] > 0)
                v = v * pow_int(pi[static_cast<std::size_t>(m)],
                                static_cast<unsigned>(M[static_cast<std::size_t>(m)]));
        out.push_back(v);
    }
    return out;
}

template <class S>
inline JetPoint<S> group_product(const JetPoint<S>& a, const JetPoint<S>& b) {
    if (a.layout != b.layout) throw std::invalid_argument("group_product: layout mismatch");
    const JetLayout& lay = *a.layout;
    JetPoint<S> out(a.layout);
    for (int m = 0; m < lay.n; ++m)
        out.x[static_cast<std::size_t>(m)] = a.x[static_cast<std::size_t>(m)] + b.x[static_cast<std::size_t>(m)];
    std::vector<S> pib = monomial_powers(lay, b.x);
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        S acc = b.u[fi];
        for (const auto& t : lay.product_terms[fi])
            acc = acc + a.u[t.flat_j] * pib[t.mono_diff] / scalar_traits<S>::from_int(static_cast<long>(t.fact_diff));
        out.u[fi] = acc;
    }
    return out;
}

// Closed form: out_I = -sum_{J >= I} a_J (-pi(a))^{J-I} / (J-I)!.
template <class S>
inline JetPoint<S> group_inverse(const JetPoint<S>& a) {
    const JetLayout& lay = *a.layout;
    JetPoint<S> out(a.layout);
    std::vector<S> neg_pi(a.x.size());
    for (std::size_t m = 0; m < a.x.size(); ++m) neg_pi[m] = -a.x[m];
    std::vector<S> powers = monomial_powers(lay, neg_pi);
    for (std::size_t m = 0; m < a.x.size(); ++m) out.x[m] = neg_pi[m];
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        S acc = scalar_traits<S>::from_int(0);
        for (const auto& t : lay.product_terms[fi])
            acc = acc + a.u[t.flat_j] * powers[t.mono_diff] / scalar_traits<S>::from_int(static_cast<long>(t.fact_diff));
        out.u[fi] = -acc;
    }
    return out;
}

template <class S>
inline JetPoint<S> dilate(const JetPoint<S>& a, const S& L) {
    const JetLayout& lay = *a.layout;
    JetPoint<S> out(a.layout);
    for (std::size_t m = 0; m < a.x.size(); ++m) out.x[m] = L * a.x[m];
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        int j = lay.layer_of_flat(fi);
        out.u[fi] = pow_int(L, static_cast<unsigned>(lay.weight_of_layer(j))) * a.u[fi];
    }
    return out;
}

// Heaviest coordinate of the homogeneous gauge, as (|value|, weight).
// N(a) = max over components of |value|^{1/weight}; comparisons between
// components avoid roots by cross-powering.
template <class S>
struct GaugeComponent {
    S value;  // absolute value
    int weight;
};

template <class S>
inline int gauge_cmp(const GaugeComponent<S>& p, const GaugeComponent<S>& q) {
    // sign of p - q where p stands for value^{1/weight}
    S lhs = pow_int(p.value, static_cast<unsigned>(q.weight));
    S rhs = pow_int(q.value, static_cast<unsigned>(p.weight));
    if (lhs < rhs) return -1;
    if (rhs < lhs) return 1;
    return 0;
}

template <class S>
inline GaugeComponent<S> gauge_max_component(const JetPoint<S>& a) {
    const JetLayout& lay = *a.layout;
    GaugeComponent<S> best{scalar_abs(a.x[0]), 1};
    for (std::size_t m = 1; m < a.x.size(); ++m) {
        GaugeComponent<S> c{scalar_abs(a.x[m]), 1};
        if (gauge_cmp(c, best) > 0) best = c;
    }
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        GaugeComponent<S> c{scalar_abs(a.u[fi]), lay.weight_of_layer(lay.layer_of_flat(fi))};
        if (gauge_cmp(c, best) > 0) best = c;
    }
    return best;
}

inline double homogeneous_norm(const JetPoint<double>& a) {
    const JetLayout& lay = *a.layout;
    double best = 0.0;
    for (double v : a.x) best = std::max(best, std::fabs(v));
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        int w = lay.weight_of_layer(lay.layer_of_flat(fi));
        best = std::max(best, std::pow(std::fabs(a.u[fi]), 1.0 / w));
    }
    return best;
}

inline double homogeneous_norm(const JetPoint<Rational>& a) {
    const JetLayout& lay = *a.layout;
    double best = 0.0;
    for (const auto& v : a.x) best = std::max(best, std::fabs(to_double(v)));
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        int w = lay.weight_of_layer(lay.layer_of_flat(fi));
        best = std::max(best, std::pow(std::fabs(to_double(a.u[fi])), 1.0 / w));
    }
    return best;
}

// Exact test N(a) <= c, componentwise: |x_i| <= c and |u^j_I| <= c^w.
inline bool norm_leq(const JetPoint<Rational>& a, const Rational& c) {
    if (c < 0) return false;
    const JetLayout& lay = *a.layout;
    for (const auto& v : a.x)
        if (scalar_abs(v) > c) return false;
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        int w = lay.weight_of_layer(lay.layer_of_flat(fi));
        if (scalar_abs(a.u[fi]) > pow_int(c, static_cast<unsigned>(w))) return false;
    }
    return true;
}

// Exact comparison N(a) vs N(b).
inline int norm_cmp(const JetPoint<Rational>& a, const JetPoint<Rational>& b) {
    auto pa = gauge_max_component(a);
    auto pb = gauge_max_component(b);
    return gauge_cmp(pa, pb);
}

template <class S>
inline JetPoint<S> left_quotient(const JetPoint<S>& a, const JetPoint<S>& b) {
    return group_product(group_inverse(a), b);
}

template <class S>
inline double quasi_distance(const JetPoint<S>& a, const JetPoint<S>& b) {
    return homogeneous_norm(left_quotient(a, b));
}

// Per-coordinate closeness with mixed absolute/relative scale. The right
// yardstick for float endpoints: the homogeneous gauge would amplify a
// machine-precision residual in a weight-w coordinate to its w-th root.
inline bool coordinatewise_close(const JetPoint<double>& a, const JetPoint<double>& b, double tol) {
    if (a.layout != b.layout) return false;
    for (std::size_t m = 0; m < a.x.size(); ++m)
        if (std::fabs(a.x[m] - b.x[m]) > tol * (1.0 + std::max(std::fabs(a.x[m]), std::fabs(b.x[m]))))
            return false;
    for (std::size_t t = 0; t < a.u.size(); ++t)
        if (std::fabs(a.u[t] - b.u[t]) > tol * (1.0 + std::max(std::fabs(a.u[t]), std::fabs(b.u[t]))))
            return false;
    return true;
}

// N^{(k+1)!}(a) as an exact rational; avoids fractional roots so that
// homogeneity statements can be tested exactly.
inline Rational norm_power(const JetPoint<Rational>& a) {
    const JetLayout& lay = *a.layout;
    unsigned P = 1;
    for (int t = 2; t <= lay.k + 1; ++t) P *= static_cast<unsigned>(t);
    Rational best = 0;
    for (const auto& v : a.x) {
        Rational c = pow_int(scalar_abs(v), P);
        if (c > best) best = c;
    }
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        int w = lay.weight_of_layer(lay.layer_of_flat(fi));
        Rational c = pow_int(scalar_abs(a.u[fi]), P / static_cast<unsigned>(w));
        if (c > best) best = c;
    }
    return best;
}

template <class Dst, class Src>
inline JetPoint<Dst> jet_cast(const JetPoint<Src>& a);

template <>
inline JetPoint<double> jet_cast<double, Rational>(const JetPoint<Rational>& a) {
    JetPoint<double> out(a.layout);
    for (std::size_t m = 0; m < a.x.size(); ++m) out.x[m] = to_double(a.x[m]);
    for (std::size_t fi = 0; fi < a.u.size(); ++fi) out.u[fi] = to_double(a.u[fi]);
    return out;
}

template <>
inline JetPoint<Rational> jet_cast<Rational, double>(const JetPoint<double>& a) {
    JetPoint<Rational> out(a.layout);
    for (std::size_t m = 0; m < a.x.size(); ++m) out.x[m] = Rational(a.x[m]);
    for (std::size_t fi = 0; fi < a.u.size(); ++fi) out.u[fi] = Rational(a.u[fi]);
    return out;
}

template <class S>
inline JetPoint<S> random_jet(LayoutPtr lay, Rng& rng, long num_range = 12, long den_range = 6) {
    JetPoint<S> p(std::move(lay));
    for (auto& v : p.x) {
        Rational r = rng.small_rational(num_range, den_range);
        if constexpr (scalar_traits<S>::exact) v = r; else v = to_double(r);
    }
    for (auto& v : p.u) {
        Rational r = rng.small_rational(num_range, den_range);
        if constexpr (scalar_traits<S>::exact) v = r; else v = to_double(r);
    }
    return p;
}

}  // namespace jetcc
