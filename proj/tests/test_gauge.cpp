#include <doctest.h>

#include <cmath>

#include "maxsheet/errors.hpp"
#include "maxsheet/gallery.hpp"
#include "maxsheet/gauge.hpp"

using namespace maxsheet;

namespace {

// sheared plane: gamma(s,t) = (s + kappa t, b t); |gamma_s| = 1,
// <gamma_s, gamma_t> = kappa, |gamma_t|^2 = kappa^2 + b^2 < 1
GraphParamSheet sheared_plane(double kappa, double b) {
    SheetView v;
    v.eval = [kappa, b](double s, double t) { return Vec2{s + kappa * t, b * t}; };
    v.ds = [](double, double) { return Vec2{1.0, 0.0}; };
    v.dt = [kappa, b](double, double) { return Vec2{kappa, b}; };
    return {v, {-10.0, 10.0, -3.0, 3.0}};
}

GraphParamSheet static_plane() {
    SheetView v;
    v.eval = [](double s, double) { return Vec2{s, 0.0}; };
    v.ds = [](double, double) { return Vec2{1.0, 0.0}; };
    v.dt = [](double, double) { return Vec2{0.0, 0.0}; };
    return {v, {-10.0, 10.0, -3.0, 3.0}};
}

} // namespace

TEST_CASE("characteristics: static plane stays put") {
    auto sheet = static_plane();
    auto chars = solve_characteristics(sheet, {-1.0, 0.0, 2.0}, -2.0, 2.0);
    for (const auto& ch : chars)
        for (double t : {-1.9, 0.0, 1.3})
            CHECK(ch.path.eval(t) == doctest::Approx(ch.seed).epsilon(1e-12));
}

TEST_CASE("characteristics: constant shear transports linearly") {
    auto sheet = sheared_plane(0.3, 0.8);
    auto chars = solve_characteristics(sheet, {0.0, 1.0}, -2.0, 2.0);
    for (const auto& ch : chars)
        for (double t : {-1.5, -0.2, 0.9, 2.0})
            CHECK(ch.path.eval(t) == doctest::Approx(ch.seed - 0.3 * t).epsilon(1e-9));
    // characteristic speed bound |ds/dt| < 1
    for (const auto& ch : chars)
        for (size_t i = 0; i < ch.path.dy.size(); ++i)
            CHECK(std::fabs(ch.path.dy[i]) < 1.0);
}

TEST_CASE("characteristics: shrinking circle in native parameterization is static") {
    // gamma(s,t) = cos t (cos s, sin s): already orthogonal
    SheetView v;
    v.eval = [](double s, double t) {
        return Vec2{std::cos(t) * std::cos(s), std::cos(t) * std::sin(s)};
    };
    v.ds = [](double s, double t) {
        return Vec2{-std::cos(t) * std::sin(s), std::cos(t) * std::cos(s)};
    };
    v.dt = [](double s, double t) {
        return Vec2{-std::sin(t) * std::cos(s), -std::sin(t) * std::sin(s)};
    };
    GraphParamSheet sheet{v, {-8.0, 8.0, -1.2, 1.2}};
    auto chars = solve_characteristics(sheet, {0.3, 1.1}, -1.0, 1.0);
    for (const auto& ch : chars)
        for (double t : {-0.9, 0.5})
            CHECK(ch.path.eval(t) == doctest::Approx(ch.seed).epsilon(1e-10));
}

TEST_CASE("characteristics exit the window -> WindowExit") {
    auto sheet = sheared_plane(0.9, 0.2);
    CHECK_THROWS_AS(solve_characteristics(sheet, {-9.8}, 0.0, 3.0), WindowExit);
}

TEST_CASE("isothermalize: already isothermal sheet maps to identity-like gauge") {
    auto sheet = sheared_plane(0.0, 0.0); // plane, gamma_t = 0, already isothermal
    auto res = isothermalize(sheet);
    for (double s : {-3.0, 0.0, 2.0})
        CHECK(res.rho.forward(s) == doctest::Approx(s).epsilon(1e-10));
    const auto resid = gauge_residuals(res.sheet, -2.0, 2.0, -1.0, 1.0);
    CHECK(resid.orthogonality < 1e-12);
    CHECK(resid.speed < 1e-10);
}

TEST_CASE("isothermalize: sheared plane restores the gauge") {
    const double kappa = 0.3, b = 0.8;
    auto sheet = sheared_plane(kappa, b);
    auto res = isothermalize(sheet);

    // rho' = |det g|^{-1/2} = (1 - b^2)^{-1/2}
    const double slope = 1.0 / std::sqrt(1.0 - b * b);
    for (double s : {-2.0, 0.0, 1.5})
        CHECK(res.rho.forward(s) == doctest::Approx(slope * s).epsilon(1e-9));

    const auto resid = gauge_residuals(res.sheet, res.rho.forward(-2.0),
                                       res.rho.forward(2.0), -1.5, 1.5);
    CHECK(resid.orthogonality <= 1e-6);
    CHECK(resid.speed <= 1e-6);

    // closed form of the new sheet: gamma'(s', t) = (sqrt(1-b^2) s', b t)
    for (double sp : {-1.0, 0.4, 2.0})
        for (double t : {-1.0, 0.0, 0.8}) {
            const Vec2 got = res.sheet.eval(sp, t);
            const Vec2 want{std::sqrt(1.0 - b * b) * sp, b * t};
            CHECK((got - want).norm() < 1e-8);
        }
}

TEST_CASE("isothermalize rejects non-timelike sheets") {
    // |gamma_t| = 1 at t=0 when b = 1: det g = 0 on the initial slice
    SheetView v;
    v.eval = [](double s, double t) { return Vec2{s, t}; };
    v.ds = [](double, double) { return Vec2{1.0, 0.0}; };
    v.dt = [](double, double) { return Vec2{0.0, 1.0}; };
    GraphParamSheet sheet{v, {-2.0, 2.0, -1.0, 1.0}};
    CHECK_THROWS_AS(isothermalize(sheet), NotTimelike);
}

TEST_CASE("isothermalize the arclength-reparameterized graph example") {
    // d'Alembert evolution of an arclength sine graph, re-parameterized per
    // slice by arclength, then isothermalized back to the gauge
    auto entry = build_gallery("graph_sine");
    IsothermalSheet base(entry.data);
    const double mid = 0.5 * (entry.scan_s1 + entry.scan_s2);
    SheetView slice = slice_arclength_view(base.view(), mid, mid - 4.0, mid + 4.0);
    GraphParamSheet gp{slice, {-2.0, 2.0, -1.0, 1.0}};

    // |gamma_s| = 1 holds for the slice view
    for (double s : {-1.5, 0.0, 1.0})
        for (double t : {-0.8, 0.3})
            CHECK(slice.ds(s, t).norm() == doctest::Approx(1.0).epsilon(1e-10));

    auto res = isothermalize(gp);
    const auto resid = gauge_residuals(res.sheet, res.rho.forward(-1.0),
                                       res.rho.forward(1.0), -0.5, 0.5, 8);
    CHECK(resid.orthogonality <= 1e-6);
    CHECK(resid.speed <= 1e-6);
}

TEST_CASE("rho covers the initial slice image") {
    auto sheet = sheared_plane(0.2, 0.5);
    auto res = isothermalize(sheet);
    CHECK(res.sp_lo == doctest::Approx(res.rho.forward(-10.0)));
    CHECK(res.sp_hi == doctest::Approx(res.rho.forward(10.0)));
    CHECK(res.sp_lo < res.sp_hi);
    // strictly increasing
    double prev = res.rho.forward(-10.0);
    for (int i = 1; i <= 50; ++i) {
        const double cur = res.rho.forward(-10.0 + 20.0 * i / 50);
        CHECK(cur > prev);
        prev = cur;
    }
}
