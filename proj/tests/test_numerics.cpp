#include <doctest.h>

#include <cmath>

#include "maxsheet/geometry.hpp"
#include "maxsheet/interp.hpp"
#include "maxsheet/ode.hpp"
#include "maxsheet/quadrature.hpp"

using namespace maxsheet;

TEST_CASE("gk15 integrates polynomials exactly") {
    double err;
    const double v = gk15([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0, err);
    // antiderivative x^4/4 - x^2 + x
    const double exact = (81.0 / 4 - 9 + 3) - (1.0 / 4 - 1 - 1);
    CHECK(std::fabs(v - exact) < 1e-12);
}

TEST_CASE("adaptive integration of a peaked function") {
    const double v = integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-11);
    const double exact = 2.0 / 1e-2 * std::atan(1.0 / 1e-2);
    CHECK(std::fabs(v - exact) < 1e-8);
}

TEST_CASE("cumulative integral matches closed form") {
    CumulativeIntegral F([](double x) { return Vec2{std::cos(x), std::sin(x)}; }, -6.0, 6.0,
                         0.0, 256);
    for (double x : {-5.5, -2.0, 0.0, 0.3, 1.7, 5.9}) {
        CHECK(std::fabs(F.eval(x).x - std::sin(x)) < 1e-12);
        CHECK(std::fabs(F.eval(x).y - (1.0 - std::cos(x))) < 1e-12);
    }
}

TEST_CASE("cubic hermite reproduces cubics and derivatives") {
    std::vector<double> xs, ys;
    auto f = [](double x) { return x * x * x - x; };
    for (int i = 0; i <= 20; ++i) {
        xs.push_back(-2.0 + 4.0 * i / 20);
        ys.push_back(f(xs.back()));
    }
    CubicHermite h(xs, ys);
    for (double x : {-1.9, -0.5, 0.0, 0.77, 1.95})
        CHECK(std::fabs(h.eval(x) - f(x)) < 5e-3);
}

TEST_CASE("monotone map inverts") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 64; ++i) {
        const double x = i / 64.0 * 3.0;
        xs.push_back(x);
        ys.push_back(x + 0.2 * std::sin(x));
    }
    MonotoneMap m(xs, ys);
    for (double x : {0.1, 0.9, 1.5, 2.4, 2.9}) {
        const double y = x + 0.2 * std::sin(x);
        CHECK(std::fabs(m.inverse(y) - x) < 1e-6);
    }
}

TEST_CASE("rk45 solves a stiff-ish linear ODE to tolerance") {
    // y' = -y + sin(t), y(0)=1; exact: y = (sin t - cos t)/2 + 1.5 e^{-t}
    auto f = [](double t, double y) { return -y + std::sin(t); };
    OdeSolution sol = solve_ode(f, 0.0, 1.0, 5.0, 1e-10);
    auto exact = [](double t) {
        return 0.5 * (std::sin(t) - std::cos(t)) + 1.5 * std::exp(-t);
    };
    CHECK(std::fabs(sol.y.back() - exact(5.0)) < 1e-8);
    for (double t : {0.3, 1.1, 2.7, 4.9}) CHECK(std::fabs(sol.eval(t) - exact(t)) < 1e-7);
}

TEST_CASE("rk45 integrates backwards") {
    auto f = [](double, double y) { return y; };
    OdeSolution sol = solve_ode(f, 0.0, 1.0, -2.0, 1e-10);
    CHECK(std::fabs(sol.y.back() - std::exp(-2.0)) < 1e-9);
}

TEST_CASE("mod_two_pi_centered") {
    CHECK(mod_two_pi_centered(kTwoPi + 0.25) == doctest::Approx(0.25));
    CHECK(mod_two_pi_centered(-kTwoPi - 0.25) == doctest::Approx(-0.25));
    CHECK(std::fabs(mod_two_pi_centered(6.0 * kPi)) < 1e-12);
}
