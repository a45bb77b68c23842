#pragma once

// Smooth scalar functions on R^n as small expression trees, with exact
// derivative extraction: taylor_at(x0, m) returns the degree-m Taylor
// polynomial in the displacement variable, computed by truncated series
// arithmetic rather than numeric differentiation. Polynomials are the
// closed special case; the one transcendental primitive is the C-infinity
// step sigma (0 below 0, 1 above 1), which is what the blending charts
// are made of.

#include "jetcc/polynomial.hpp"

#include <memory>
#include <vector>

namespace jetcc {

class SmoothFn {
  public:
    explicit SmoothFn(int n) : n_(n) {}
    virtual ~SmoothFn() = default;
    int arity() const { return n_; }
    virtual double eval(const std::vector<double>& z) const = 0;
    // Degree-m Taylor polynomial g with g(d) ~ f(x0 + d).
    virtual Polynomial<double> taylor_at(const std::vector<double>& x0, int m) const = 0;

  private:
    int n_;
};

using FnPtr = std::shared_ptr<const SmoothFn>;

FnPtr fn_poly(Polynomial<double> p);
FnPtr fn_const(int n, double c);
FnPtr fn_sum(std::vector<FnPtr> parts);
FnPtr fn_prod(std::vector<FnPtr> parts);
FnPtr fn_scale(double c, FnPtr f);
// amp * f((z - shift) / scale)
FnPtr fn_linear_arg(FnPtr f, std::vector<double> shift, double scale, double amp);
// sigma(inner(z))
FnPtr fn_sigma(FnPtr inner);

// The step itself: 0 for s <= 0, 1 for s >= 1, C-infinity throughout.
double sigma_value(double s);
// Taylor coefficients of sigma at s0, orders 0..m.
std::vector<double> sigma_series(double s0, int m);

// Jet of a smooth function (float profile): u^j_I = I! times the Taylor coefficient.
JetPoint<double> jet_of_smooth(const SmoothFn& f, const std::vector<double>& x0, LayoutPtr lay);

}  // namespace jetcc
