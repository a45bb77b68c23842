#include "jetcc/smooth_fn.hpp"

#include <cmath>
#include <stdexcept>

namespace jetcc {

namespace {

// ---- univariate truncated series (coefficients 0..m) ----

using Series = std::vector<double>;

Series series_mul(const Series& a, const Series& b, int m) {
    Series r(static_cast<std::size_t>(m) + 1, 0.0);
    for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(m); ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(m); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// 1 / a, requires a[0] != 0.
Series series_recip(const Series& a, int m) {
    Series r(static_cast<std::size_t>(m) + 1, 0.0);
    r[0] = 1.0 / a[0];
    for (int t = 1; t <= m; ++t) {
        double s = 0.0;
        for (int j = 1; j <= t; ++j)
            s += (static_cast<std::size_t>(j) < a.size() ? a[static_cast<std::size_t>(j)] : 0.0) *
                 r[static_cast<std::size_t>(t - j)];
        r[static_cast<std::size_t>(t)] = -s / a[0];
    }
    return r;
}

// exp(a) via the recurrence y' = a' y; handles arbitrary constant term.
Series series_exp(const Series& a, int m) {
    Series r(static_cast<std::size_t>(m) + 1, 0.0);
    r[0] = std::exp(a.empty() ? 0.0 : a[0]);
    for (int t = 1; t <= m; ++t) {
        double s = 0.0;
        for (int j = 1; j <= t; ++j)
            s += j * (static_cast<std::size_t>(j) < a.size() ? a[static_cast<std::size_t>(j)] : 0.0) *
                 r[static_cast<std::size_t>(t - j)];
        r[static_cast<std::size_t>(t)] = s / t;
    }
    return r;
}

// series of exp(-1/s) at s0 > 0
Series bump_series(double s0, int m) {
    Series s(static_cast<std::size_t>(m) + 1, 0.0);
    s[0] = s0;
    if (m >= 1) s[1] = 1.0;
    Series inv = series_recip(s, m);
    for (auto& c : inv) c = -c;
    return series_exp(inv, m);
}

// ---- nodes ----

class PolyNode final : public SmoothFn {
  public:
    explicit PolyNode(Polynomial<double> p) : SmoothFn(p.n), p_(std::move(p)) {}
    double eval(const std::vector<double>& z) const override { return poly_eval(p_, z); }
    Polynomial<double> taylor_at(const std::vector<double>& x0, int m) const override {
        return truncate(shift_arg(p_, x0), m);
    }

  private:
    Polynomial<double> p_;
};

class SumNode final : public SmoothFn {
  public:
    explicit SumNode(std::vector<FnPtr> parts) : SmoothFn(parts.at(0)->arity()), parts_(std::move(parts)) {
        for (auto& p : parts_)
            if (p->arity() != arity()) throw std::invalid_argument("fn_sum: arity mismatch");
    }
    double eval(const std::vector<double>& z) const override {
        double s = 0.0;
        for (auto& p : parts_) s += p->eval(z);
        return s;
    }
    Polynomial<double> taylor_at(const std::vector<double>& x0, int m) const override {
        Polynomial<double> r(arity(), m);
        for (auto& p : parts_) r = r + p->taylor_at(x0, m);
        return r;
    }

  private:
    std::vector<FnPtr> parts_;
};

class ProdNode final : public SmoothFn {
  public:
    explicit ProdNode(std::vector<FnPtr> parts) : SmoothFn(parts.at(0)->arity()), parts_(std::move(parts)) {
        for (auto& p : parts_)
            if (p->arity() != arity()) throw std::invalid_argument("fn_prod: arity mismatch");
    }
    double eval(const std::vector<double>& z) const override {
        double s = 1.0;
        for (auto& p : parts_) s *= p->eval(z);
        return s;
    }
    Polynomial<double> taylor_at(const std::vector<double>& x0, int m) const override {
        Polynomial<double> r = poly_const(arity(), 1.0);
        for (auto& p : parts_) r = truncate(r * p->taylor_at(x0, m), m);
        return r;
    }

  private:
    std::vector<FnPtr> parts_;
};

class LinearArgNode final : public SmoothFn {
  public:
    LinearArgNode(FnPtr f, std::vector<double> shift, double scale, double amp)
        : SmoothFn(f->arity()), f_(std::move(f)), shift_(std::move(shift)), scale_(scale), amp_(amp) {
        if (static_cast<int>(shift_.size()) != arity()) throw std::invalid_argument("fn_linear_arg: shift arity");
        if (scale_ == 0.0) throw std::invalid_argument("fn_linear_arg: zero scale");
    }
    double eval(const std::vector<double>& z) const override {
        std::vector<double> w(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) w[i] = (z[i] - shift_[i]) / scale_;
        return amp_ * f_->eval(w);
    }
    Polynomial<double> taylor_at(const std::vector<double>& x0, int m) const override {
        std::vector<double> w(x0.size());
        for (std::size_t i = 0; i < x0.size(); ++i) w[i] = (x0[i] - shift_[i]) / scale_;
        Polynomial<double> t = f_->taylor_at(w, m);
        Polynomial<double> r(arity(), t.maxdeg);
        for (auto& [I, c] : t.terms)
            r.set(I, amp_ * c / std::pow(scale_, mi_degree(I)));
        return r;
    }

  private:
    FnPtr f_;
    std::vector<double> shift_;
    double scale_, amp_;
};

class SigmaNode final : public SmoothFn {
  public:
    explicit SigmaNode(FnPtr inner) : SmoothFn(inner->arity()), inner_(std::move(inner)) {}
    double eval(const std::vector<double>& z) const override { return sigma_value(inner_->eval(z)); }
    Polynomial<double> taylor_at(const std::vector<double>& x0, int m) const override {
        Polynomial<double> g = inner_->taylor_at(x0, m);
        MultiIndex zero(static_cast<std::size_t>(arity()), 0);
        double s0 = g.coeff(zero);
        // Outside the transition band every derivative vanishes; the Taylor
        // polynomial really is the constant.
        if (s0 <= 0.0) return Polynomial<double>(arity(), 0);
        if (s0 >= 1.0) return poly_const(arity(), 1.0);
        std::vector<double> c = sigma_series(s0, m);
        Polynomial<double> dg = g;  // g minus its constant term
        dg.set(zero, 0.0);
        // Horner composition; dg has zero constant term so orders fill up.
        Polynomial<double> r = poly_const(arity(), c[static_cast<std::size_t>(m)]);
        for (int t = m - 1; t >= 0; --t)
            r = truncate(r * dg, m) + poly_const(arity(), c[static_cast<std::size_t>(t)]);
        return r;
    }

  private:
    FnPtr inner_;
};

}  // namespace

double sigma_value(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double e1 = std::exp(-1.0 / s);
    double e2 = std::exp(-1.0 / (1.0 - s));
    return e1 / (e1 + e2);
}

std::vector<double> sigma_series(double s0, int m) {
    if (s0 <= 0.0 || s0 >= 1.0) {
        std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
        c[0] = s0 >= 1.0 ? 1.0 : 0.0;
        return c;
    }
    Series e1 = bump_series(s0, m);
    Series rev(static_cast<std::size_t>(m) + 1, 0.0);
    // series of exp(-1/(1-s)) at s0: substitute t -> -t into the expansion at 1-s0
    Series e2 = bump_series(1.0 - s0, m);
    for (std::size_t i = 0; i < e2.size(); ++i) rev[i] = (i % 2 == 0) ? e2[i] : -e2[i];
    Series denom(static_cast<std::size_t>(m) + 1, 0.0);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(m); ++i) denom[i] = e1[i] + rev[i];
    return series_mul(e1, series_recip(denom, m), m);
}

FnPtr fn_poly(Polynomial<double> p) { return std::make_shared<PolyNode>(std::move(p)); }

FnPtr fn_const(int n, double c) { return fn_poly(poly_const(n, c)); }

FnPtr fn_sum(std::vector<FnPtr> parts) { return std::make_shared<SumNode>(std::move(parts)); }

FnPtr fn_prod(std::vector<FnPtr> parts) { return std::make_shared<ProdNode>(std::move(parts)); }

FnPtr fn_scale(double c, FnPtr f) {
    int n = f->arity();
    return fn_linear_arg(std::move(f), std::vector<double>(static_cast<std::size_t>(n), 0.0), 1.0, c);
}

FnPtr fn_linear_arg(FnPtr f, std::vector<double> shift, double scale, double amp) {
    return std::make_shared<LinearArgNode>(std::move(f), std::move(shift), scale, amp);
}

FnPtr fn_sigma(FnPtr inner) { return std::make_shared<SigmaNode>(std::move(inner)); }

JetPoint<double> jet_of_smooth(const SmoothFn& f, const std::vector<double>& x0, LayoutPtr lay) {
    if (f.arity() != lay->n) throw std::invalid_argument("jet_of_smooth: arity mismatch");
    JetPoint<double> out(lay);
    out.x = x0;
    Polynomial<double> g = f.taylor_at(x0, lay->k);
    for (std::size_t fi = 0; fi < lay->ucount; ++fi) {
        const MultiIndex& I = lay->flat_mi(fi);
        out.u[fi] = g.coeff(I) * static_cast<double>(mi_factorial_u64(I));
    }
    return out;
}

}  // namespace jetcc
