#pragma once

// Polynomials on R^n in graded-lex monomial order: the carriers of Taylor
// data. A jet is read off a polynomial by differentiating at the base point;
// conversely every jet owns a canonical degree-k carrier.

#include "jetcc/jets.hpp"
#include "jetcc/multiindex.hpp"
#include "jetcc/scalar.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace jetcc {

inline std::uint64_t binom_u64(int a, int b) {
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    std::uint64_t r = 1;
    for (int t = 1; t <= b; ++t) r = r * static_cast<std::uint64_t>(a - b + t) / static_cast<std::uint64_t>(t);
    return r;
}

struct MiLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return mi_less(a, b); }
};

template <class S>
struct Polynomial {
    int n = 1;
    int maxdeg = 0;
    std::map<MultiIndex, S, MiLess> terms;  // nonzero coefficients only

    Polynomial() = default;
    Polynomial(int n_, int maxdeg_) : n(n_), maxdeg(maxdeg_) {}

    S coeff(const MultiIndex& I) const {
        auto it = terms.find(I);
        return it == terms.end() ? scalar_traits<S>::from_int(0) : it->second;
    }
    void set(const MultiIndex& I, const S& v) {
        if (static_cast<int>(I.size()) != n) throw std::invalid_argument("Polynomial::set: index arity");
        if (v == scalar_traits<S>::from_int(0)) terms.erase(I);
        else terms[I] = v;
        if (mi_degree(I) > maxdeg) maxdeg = mi_degree(I);
    }
    void add_to(const MultiIndex& I, const S& v) { set(I, coeff(I) + v); }

    int degree() const {
        int d = 0;
        for (auto& [I, c] : terms) d = std::max(d, mi_degree(I));
        return d;
    }
    bool operator==(const Polynomial& o) const { return n == o.n && terms == o.terms; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
};

template <class S>
inline Polynomial<S> poly_const(int n, const S& v) {
    Polynomial<S> p(n, 0);
    p.set(MultiIndex(static_cast<std::size_t>(n), 0), v);
    return p;
}

template <class S>
inline S poly_eval(const Polynomial<S>& p, const std::vector<S>& x) {
    if (static_cast<int>(x.size()) != p.n) throw std::invalid_argument("poly_eval: arity");
    S acc = scalar_traits<S>::from_int(0);
    for (auto& [I, c] : p.terms) {
        S m = c;
        for (int a = 0; a < p.n; ++a)
            if (I[static_cast<std::size_t>(a)] > 0)
                m = m * pow_int(x[static_cast<std::size_t>(a)], static_cast<unsigned>(I[static_cast<std::size_t>(a)]));
        acc = acc + m;
    }
    return acc;
}

template <class S>
inline Polynomial<S> operator+(const Polynomial<S>& p, const Polynomial<S>& q) {
    if (p.n != q.n) throw std::invalid_argument("poly add: arity");
    Polynomial<S> r(p.n, std::max(p.maxdeg, q.maxdeg));
    r.terms = p.terms;
    for (auto& [I, c] : q.terms) {
        auto it = r.terms.find(I);
        if (it == r.terms.end()) r.terms[I] = c;
        else {
            it->second = it->second + c;
            if (it->second == scalar_traits<S>::from_int(0)) r.terms.erase(it);
        }
    }
    return r;
}

template <class S>
inline Polynomial<S> operator-(const Polynomial<S>& p) {
    Polynomial<S> r(p.n, p.maxdeg);
    for (auto& [I, c] : p.terms) r.terms[I] = -c;
    return r;
}

template <class S>
inline Polynomial<S> operator-(const Polynomial<S>& p, const Polynomial<S>& q) { return p + (-q); }

template <class S>
inline Polynomial<S> operator*(const S& s, const Polynomial<S>& p) {
    Polynomial<S> r(p.n, p.maxdeg);
    if (s == scalar_traits<S>::from_int(0)) return r;
    for (auto& [I, c] : p.terms) r.terms[I] = s * c;
    return r;
}

template <class S>
inline Polynomial<S> operator*(const Polynomial<S>& p, const Polynomial<S>& q) {
    if (p.n != q.n) throw std::invalid_argument("poly mul: arity");
    Polynomial<S> r(p.n, p.maxdeg + q.maxdeg);
    for (auto& [I, a] : p.terms)
        for (auto& [J, b] : q.terms)
            r.add_to(mi_add(I, J), a * b);
    r.maxdeg = std::max(r.degree(), 0);
    return r;
}

template <class S>
inline Polynomial<S> truncate(const Polynomial<S>& p, int deg) {
    Polynomial<S> r(p.n, std::min(p.maxdeg, deg));
    for (auto& [I, c] : p.terms)
        if (mi_degree(I) <= deg) r.terms[I] = c;
    return r;
}

template <class S>
inline Polynomial<S> partial(const Polynomial<S>& p, int axis) {
    Polynomial<S> r(p.n, std::max(p.maxdeg - 1, 0));
    for (auto& [I, c] : p.terms) {
        int e = I[static_cast<std::size_t>(axis)];
        if (e == 0) continue;
        MultiIndex J = I;
        J[static_cast<std::size_t>(axis)] -= 1;
        r.add_to(J, scalar_traits<S>::from_int(e) * c);
    }
    return r;
}

template <class S>
inline Polynomial<S> partial_mi(const Polynomial<S>& p, const MultiIndex& I) {
    Polynomial<S> r = p;
    for (int a = 0; a < static_cast<int>(I.size()); ++a)
        for (int t = 0; t < I[static_cast<std::size_t>(a)]; ++t) r = partial(r, a);
    return r;
}

// f(z + c), expanded. shift_arg(p, c)(z) = p(z + c).
template <class S>
inline Polynomial<S> shift_arg(const Polynomial<S>& p, const std::vector<S>& c) {
    if (static_cast<int>(c.size()) != p.n) throw std::invalid_argument("shift_arg: arity");
    Polynomial<S> r(p.n, p.maxdeg);
    std::vector<MultiIndex> below;
    for (auto& [I, a] : p.terms) {
        // z^I expands over all J <= I with binomial weights.
        below.clear();
        below.push_back(MultiIndex(static_cast<std::size_t>(p.n), 0));
        // enumerate J <= I by per-axis counters
        MultiIndex J(static_cast<std::size_t>(p.n), 0);
        while (true) {
            S w = a;
            for (int m = 0; m < p.n; ++m) {
                int im = I[static_cast<std::size_t>(m)], jm = J[static_cast<std::size_t>(m)];
                if (jm < im)
                    w = w * scalar_traits<S>::from_int(static_cast<long>(binom_u64(im, jm))) *
                        pow_int(c[static_cast<std::size_t>(m)], static_cast<unsigned>(im - jm));
                else if (jm == im)
                    w = w * scalar_traits<S>::from_int(static_cast<long>(binom_u64(im, jm)));
            }
            r.add_to(J, w);
            int m = 0;
            while (m < p.n && J[static_cast<std::size_t>(m)] == I[static_cast<std::size_t>(m)]) {
                J[static_cast<std::size_t>(m)] = 0;
                ++m;
            }
            if (m == p.n) break;
            J[static_cast<std::size_t>(m)] += 1;
        }
    }
    return r;
}

// T^k_{x0} f: degree-k Taylor polynomial about x0, in the original variable.
template <class S>
inline Polynomial<S> taylor(const Polynomial<S>& f, const std::vector<S>& x0, int k) {
    if (k < 0) throw std::invalid_argument("taylor: negative order");
    Polynomial<S> g = shift_arg(f, x0);         // g(d) = f(x0 + d)
    Polynomial<S> t = truncate(g, k);
    std::vector<S> neg(x0.size());
    for (std::size_t m = 0; m < x0.size(); ++m) neg[m] = -x0[m];
    return shift_arg(t, neg);                   // substitute d = z - x0
}

// u^j_I = \partial_I f(x0); base coordinate x0.
template <class S>
inline JetPoint<S> jet_of(const Polynomial<S>& f, const std::vector<S>& x0, LayoutPtr lay) {
    if (static_cast<int>(x0.size()) != lay->n || f.n != lay->n)
        throw std::invalid_argument("jet_of: arity mismatch");
    JetPoint<S> out(lay);
    out.x = x0;
    Polynomial<S> g = shift_arg(f, x0);  // coeff of d^I is \partial_I f(x0) / I!
    for (std::size_t fi = 0; fi < lay->ucount; ++fi) {
        const MultiIndex& I = lay->flat_mi(fi);
        out.u[fi] = g.coeff(I) * scalar_traits<S>::from_int(static_cast<long>(mi_factorial_u64(I)));
    }
    return out;
}

// The canonical degree-k carrier of a: z -> sum_I a_I (z - pi(a))^I / I!.
template <class S>
inline Polynomial<S> poly_of_jet(const JetPoint<S>& a) {
    const JetLayout& lay = *a.layout;
    Polynomial<S> q(lay.n, lay.k);
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        const MultiIndex& I = lay.flat_mi(fi);
        q.add_to(I, a.u[fi] / scalar_traits<S>::from_int(static_cast<long>(mi_factorial_u64(I))));
    }
    std::vector<S> neg(a.x.size());
    for (std::size_t m = 0; m < a.x.size(); ++m) neg[m] = -a.x[m];
    return shift_arg(q, neg);
}

// f^a(z) = f(z - pi(a)) + sum_I a_I (z - pi(a))^I / I!.
template <class S>
inline Polynomial<S> shift_function(const Polynomial<S>& f, const JetPoint<S>& a) {
    const JetLayout& lay = *a.layout;
    Polynomial<S> q(lay.n, lay.k);
    for (std::size_t fi = 0; fi < lay.ucount; ++fi) {
        const MultiIndex& I = lay.flat_mi(fi);
        q.add_to(I, a.u[fi] / scalar_traits<S>::from_int(static_cast<long>(mi_factorial_u64(I))));
    }
    Polynomial<S> sum = f + q;
    std::vector<S> neg(a.x.size());
    for (std::size_t m = 0; m < a.x.size(); ++m) neg[m] = -a.x[m];
    return shift_arg(sum, neg);
}

// f_L(z) = L^{k+1} f(z/L): coefficient of z^I picks up L^{k+1-|I|}.
template <class S>
inline Polynomial<S> scale_function(const Polynomial<S>& f, const S& L, int k) {
    Polynomial<S> r(f.n, f.maxdeg);
    const S one = scalar_traits<S>::from_int(1);
    for (auto& [I, c] : f.terms) {
        int e = k + 1 - mi_degree(I);
        S w = e >= 0 ? pow_int(L, static_cast<unsigned>(e)) : one / pow_int(L, static_cast<unsigned>(-e));
        r.terms[I] = w * c;
    }
    return r;
}

// lhs = jet(f^a, x + pi(a)), rhs = a . jet(f, x); the two must agree.
template <class S>
inline std::pair<JetPoint<S>, JetPoint<S>> jet_translation(const JetPoint<S>& a, const Polynomial<S>& f,
                                                           const std::vector<S>& x) {
    LayoutPtr lay = a.layout;
    std::vector<S> xa(x.size());
    for (std::size_t m = 0; m < x.size(); ++m) xa[m] = x[m] + a.x[m];
    JetPoint<S> lhs = jet_of(shift_function(f, a), xa, lay);
    JetPoint<S> rhs = group_product(a, jet_of(f, x, lay));
    return {lhs, rhs};
}

// sup over the segment [x,y] of sqrt(1 + sum of squared (k+1)-st partials),
// times |y - x|. Sampled at 64 points, then golden-section refined around the
// best sample; the integrand is polynomial in t so this converges cleanly.
inline double jet_map_lipschitz_bound(const Polynomial<double>& f, const std::vector<double>& x,
                                      const std::vector<double>& y, int k) {
    int n = f.n;
    std::vector<Polynomial<double>> parts;
    for (auto& I : enumerate_multiindices(n, k))
        for (int i = 0; i < n; ++i) parts.push_back(partial_mi(f, mi_add(I, mi_unit(n, i))));
    auto factor_sq = [&](double t) {
        std::vector<double> z(x.size());
        for (std::size_t m = 0; m < x.size(); ++m) z[m] = (1.0 - t) * x[m] + t * y[m];
        double s = 1.0;
        for (auto& g : parts) {
            double v = poly_eval(g, z);
            s += v * v;
        }
        return s;
    };
    int best = 0;
    double best_v = factor_sq(0.0);
    const int samples = 64;
    for (int s = 1; s <= samples; ++s) {
        double v = factor_sq(static_cast<double>(s) / samples);
        if (v > best_v) { best_v = v; best = s; }
    }
    double lo = std::max(0.0, (best - 1.0) / samples);
    double hi = std::min(1.0, (best + 1.0) / samples);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = factor_sq(c), fd = factor_sq(d);
    for (int it = 0; it < 200 && (hi - lo) > 1e-6 * (1.0 + hi); ++it) {
        if (fc > fd) { hi = d; d = c; fd = fc; c = hi - gr * (hi - lo); fc = factor_sq(c); }
        else { lo = c; c = d; fc = fd; d = lo + gr * (hi - lo); fd = factor_sq(d); }
    }
    best_v = std::max(best_v, std::max(fc, fd));
    double dist = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) dist += (y[m] - x[m]) * (y[m] - x[m]);
    return std::sqrt(best_v) * std::sqrt(dist);
}

template <class S>
inline Polynomial<S> random_polynomial(int n, int deg, Rng& rng, long num_range = 8, long den_range = 4) {
    Polynomial<S> p(n, deg);
    for (int d = 0; d <= deg; ++d)
        for (auto& I : enumerate_multiindices(n, d)) {
            Rational r = rng.small_rational(num_range, den_range);
            if constexpr (scalar_traits<S>::exact) p.set(I, r);
            else p.set(I, to_double(r));
        }
    return p;
}

}  // namespace jetcc
