#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetcc/smooth_fn.hpp"

#include <cmath>

using namespace jetcc;

namespace {

// central finite differences on a SmoothFn, for cross-checking taylor_at
double fd1(const SmoothFn& f, std::vector<double> z, int axis, double h) {
    z[static_cast<std::size_t>(axis)] += h;
    double up = f.eval(z);
    z[static_cast<std::size_t>(axis)] -= 2 * h;
    double dn = f.eval(z);
    return (up - dn) / (2 * h);
}

double fd2(const SmoothFn& f, std::vector<double> z, int a1, int a2, double h) {
    auto shift = [&](double s1, double s2) {
        auto w = z;
        w[static_cast<std::size_t>(a1)] += s1;
        w[static_cast<std::size_t>(a2)] += s2;
        return f.eval(w);
    };
    return (shift(h, h) - shift(h, -h) - shift(-h, h) + shift(-h, -h)) / (4 * h * h);
}

}  // namespace

TEST_CASE("sigma step values") {
    CHECK(sigma_value(-1.0) == 0.0);
    CHECK(sigma_value(0.0) == 0.0);
    CHECK(sigma_value(1.0) == 1.0);
    CHECK(sigma_value(2.0) == 1.0);
    CHECK(sigma_value(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    for (double s = 0.05; s < 1.0; s += 0.05) {
        CHECK(sigma_value(s) + sigma_value(1.0 - s) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(sigma_value(s) >= 0.0);
        CHECK(sigma_value(s) <= 1.0);
        CHECK(sigma_value(s + 0.05) >= sigma_value(s));  // monotone
    }
}

TEST_CASE("sigma series against finite differences") {
    for (double s0 : {0.2, 0.35, 0.5, 0.65, 0.8}) {
        auto c = sigma_series(s0, 3);
        CHECK(c[0] == doctest::Approx(sigma_value(s0)).epsilon(1e-13));
        double h = 1e-4;
        double d1 = (sigma_value(s0 + h) - sigma_value(s0 - h)) / (2 * h);
        double d2 = (sigma_value(s0 + h) - 2 * sigma_value(s0) + sigma_value(s0 - h)) / (h * h);
        CHECK(c[1] == doctest::Approx(d1).epsilon(1e-6));
        CHECK(2.0 * c[2] == doctest::Approx(d2).epsilon(1e-4));
    }
    // at and beyond the knots the polynomial is the constant
    auto lo = sigma_series(-0.5, 4);
    for (double v : lo) CHECK(v == 0.0);
    auto hi = sigma_series(1.5, 4);
    CHECK(hi[0] == 1.0);
    for (std::size_t i = 1; i < hi.size(); ++i) CHECK(hi[i] == 0.0);
}

TEST_CASE("polynomial node taylor expands around the base point") {
    Polynomial<double> p(2, 3);
    p.set({2, 1}, 0.5);
    p.set({1, 0}, -2.0);
    p.set({0, 0}, 1.25);
    auto f = fn_poly(p);
    std::vector<double> x0{0.3, -0.7};
    auto t = f->taylor_at(x0, 3);
    for (double dx : {-0.05, 0.0, 0.04})
        for (double dy : {-0.03, 0.02}) {
            double direct = f->eval({x0[0] + dx, x0[1] + dy});
            double viataylor = poly_eval(t, {dx, dy});
            CHECK(direct == doctest::Approx(viataylor).epsilon(1e-12));
        }
}

TEST_CASE("composite derivative extraction matches finite differences") {
    // f(z) = sigma(q(z)) * p(z) + 3 * p((z - shift)/2)
    Polynomial<double> q(2, 2);
    q.set({0, 0}, 0.4);
    q.set({1, 0}, 0.3);
    q.set({0, 2}, -0.2);
    Polynomial<double> p(2, 2);
    p.set({0, 0}, 1.0);
    p.set({1, 1}, 2.0);
    p.set({2, 0}, -0.5);
    auto f = fn_sum({fn_prod({fn_sigma(fn_poly(q)), fn_poly(p)}),
                     fn_linear_arg(fn_poly(p), {0.1, -0.2}, 2.0, 3.0)});

    std::vector<double> x0{0.15, -0.35};
    auto t = f->taylor_at(x0, 2);
    MultiIndex zero{0, 0};
    CHECK(t.coeff(zero) == doctest::Approx(f->eval(x0)).epsilon(1e-12));
    double h = 1e-5;
    CHECK(t.coeff({1, 0}) == doctest::Approx(fd1(*f, x0, 0, h)).epsilon(1e-6));
    CHECK(t.coeff({0, 1}) == doctest::Approx(fd1(*f, x0, 1, h)).epsilon(1e-6));
    h = 1e-4;
    CHECK(2.0 * t.coeff({2, 0}) == doctest::Approx(fd2(*f, x0, 0, 0, h)).epsilon(1e-4));
    CHECK(t.coeff({1, 1}) == doctest::Approx(fd2(*f, x0, 0, 1, h)).epsilon(1e-4));
}

TEST_CASE("linear argument node rescales derivatives") {
    Polynomial<double> p(1, 3);
    p.set({3}, 1.0);
    auto f = fn_linear_arg(fn_poly(p), {1.0}, 4.0, 8.0);  // 8 * ((z-1)/4)^3
    CHECK(f->eval({5.0}) == doctest::Approx(8.0).epsilon(1e-14));
    auto t = f->taylor_at({1.0}, 3);
    CHECK(t.coeff({3}) == doctest::Approx(8.0 / 64.0).epsilon(1e-14));
    CHECK(t.coeff({0}) == doctest::Approx(0.0));
}

TEST_CASE("sigma saturates to exact constants") {
    Polynomial<double> above(1, 0);
    above.set({0}, 2.5);  // inner constantly 2.5
    auto hi = fn_sigma(fn_poly(above));
    auto t = hi->taylor_at({0.0}, 3);
    CHECK(t.coeff({0}) == 1.0);
    CHECK(t.coeff({1}) == 0.0);
    CHECK(t.coeff({2}) == 0.0);

    Polynomial<double> below(1, 1);
    below.set({0}, -3.0);
    below.set({1}, 0.5);
    auto lo = fn_sigma(fn_poly(below));
    auto t2 = lo->taylor_at({0.0}, 3);
    CHECK(t2.terms.empty());
}

TEST_CASE("jets of smooth functions agree with the polynomial path") {
    Polynomial<double> p(1, 3);
    p.set({3}, 1.0);
    p.set({1}, -2.0);
    auto lay = jet_layout(1, 2);
    auto viasmooth = jet_of_smooth(*fn_poly(p), {0.5}, lay);
    auto viapoly = jet_of(p, {0.5}, lay);
    CHECK(viasmooth.x[0] == viapoly.x[0]);
    for (std::size_t i = 0; i < viasmooth.u.size(); ++i)
        CHECK(viasmooth.u[i] == doctest::Approx(viapoly.u[i]).epsilon(1e-13));
}
