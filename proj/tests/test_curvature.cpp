#include <doctest.h>

#include <cmath>

#include "maxsheet/curvature.hpp"
#include "maxsheet/errors.hpp"
#include "maxsheet/gallery.hpp"
#include "maxsheet/gauge.hpp"

using namespace maxsheet;

TEST_CASE("cross-section curvature: shrinking circle and line") {
    auto entry = build_gallery("shrinking_circle");
    IsothermalSheet sheet(entry.data);
    const SheetView view = sheet.view();
    for (double t : {-1.3, -0.4, 0.0, 0.9, 1.39}) {
        const auto k = cross_section_curvature(view, 1.0, t);
        REQUIRE(k.kappa_std);
        CHECK(std::fabs(*k.kappa_std) ==
              doctest::Approx(1.0 / std::fabs(std::cos(t))).epsilon(1e-10));
        if (t != 0.0) {
            REQUIRE(k.k_paper);
            CHECK(std::fabs(*k.k_paper) ==
                  doctest::Approx(1.0 / std::fabs(std::cos(t))).epsilon(1e-10));
        } else {
            CHECK(!k.k_paper); // gamma_t = 0 at t = 0: paper normal undefined
        }
    }

    auto line = build_gallery("plane");
    IsothermalSheet lsheet(line.data);
    const auto lk = cross_section_curvature(lsheet.view(), 0.3, 2.0);
    REQUIRE(lk.kappa_std);
    CHECK(std::fabs(*lk.kappa_std) < 1e-14);

    // curvature at t = 0 matches the planar curvature of c from c''
    const auto k0 = cross_section_curvature(view, 0.7, 0.0);
    REQUIRE(k0.kappa_std);
    CHECK(*k0.kappa_std == doctest::Approx(1.0).epsilon(1e-12)); // unit circle
}

TEST_CASE("mean curvature vanishes on exact sheets") {
    for (const char* name : {"shrinking_circle", "graph_sine", "doubly_periodic"}) {
        auto entry = build_gallery(name);
        IsothermalSheet sheet(entry.data);
        const SheetView view = sheet.view();
        for (int i = 0; i < 100; ++i) {
            const Vec2 u = quasi_random_01(i);
            const double s = entry.scan_s1 + (entry.scan_s2 - entry.scan_s1) * u.x;
            const double t = -1.2 + 2.4 * u.y;
            try {
                CHECK(std::fabs(mean_curvature_scalar(view, s, t)) < 1e-7);
            } catch (const Error&) {
                // non-timelike or degenerate normal: outside the op's domain
            }
        }
    }
}

TEST_CASE("mean curvature of the non-maximal sheet (s, t^2)") {
    SheetView v;
    v.eval = [](double s, double t) { return Vec2{s, t * t}; };
    v.ds = [](double, double) { return Vec2{1.0, 0.0}; };
    v.dt = [](double, double t) { return Vec2{0.0, 2.0 * t}; };
    v.dss = [](double, double) { return Vec2{0.0, 0.0}; };
    v.dst = [](double, double) { return Vec2{0.0, 0.0}; };
    v.dtt = [](double, double) { return Vec2{0.0, 2.0}; };
    // hand-computed: E=1, F=0, G=-1+4t^2, e=0, g=-2 sgn t/sqrt(1-4t^2)
    // => h = 2 sgn t/(1-4t^2)^{3/2}
    for (double t : {0.1, 0.2, -0.3, 0.45}) {
        const double q = 1.0 - 4.0 * t * t;
        const double want = 2.0 * (t > 0 ? 1.0 : -1.0) / std::pow(q, 1.5);
        CHECK(mean_curvature_scalar(v, 0.0, t) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS(mean_curvature_scalar(v, 0.0, 0.51), NotTimelike);
    CHECK_THROWS_AS(mean_curvature_scalar(v, 0.0, 0.0), UndefinedValue);
}

TEST_CASE("blow-up identity residual: plane exact, circle and cigar small") {
    auto plane = build_gallery("plane");
    IsothermalSheet psheet(plane.data);
    CHECK(blowup_identity_residual(psheet.view(), 0.3, 1.0) == 0.0);

    auto circle = build_gallery("shrinking_circle");
    IsothermalSheet csheet(circle.data);
    CHECK(blowup_identity_residual(csheet.view(), 0.0, 1.0, 1e-3) <= 1e-6);

    auto cigar = build_gallery("cigar");
    IsothermalSheet gsheet(cigar.data);
    CHECK(blowup_identity_residual(gsheet.view(), 0.31, 0.2, 1e-3) <= 1e-5);
}

TEST_CASE("blow-up identity residual decreases at second order") {
    auto circle = build_gallery("shrinking_circle");
    IsothermalSheet sheet(circle.data);
    const SheetView view = sheet.view();
    const double r8 = blowup_identity_residual(view, 0.4, 1.1, 8e-3);
    const double r4 = blowup_identity_residual(view, 0.4, 1.1, 4e-3);
    const double r2 = blowup_identity_residual(view, 0.4, 1.1, 2e-3);
    const double o1 = std::log2(r8 / r4);
    const double o2 = std::log2(r4 / r2);
    CHECK(o1 >= 1.8);
    CHECK(o2 >= 1.8);
}

TEST_CASE("blow-up integral: circle log-secant closed form and divergence") {
    auto circle = build_gallery("shrinking_circle");
    IsothermalSheet sheet(circle.data);
    const double t0 = 0.5 * kPi, eps = 0.5;
    const auto seq = default_window_sequence(eps, 5);
    const auto res = blowup_integral(sheet.view(), 0.7, t0, eps, seq);
    REQUIRE(res.partials.size() == 5);
    // int |k| dt = int sec t dt = log(tan(t/2 + pi/4))
    auto F = [](double t) { return std::log(std::tan(0.5 * t + 0.25 * kPi)); };
    for (size_t j = 0; j < res.partials.size(); ++j) {
        const double want = F(t0 - res.deltas[j]) - F(t0 - eps);
        CHECK(std::fabs(res.partials[j] - want) < 1e-6);
    }
    CHECK(res.divergent);

    // plane anchor is not singular
    auto plane = build_gallery("plane");
    IsothermalSheet psheet(plane.data);
    CHECK_THROWS_AS(blowup_integral(psheet.view(), 0.0, 1.0, 0.5, seq), NotSingularAnchor);

    // cigar anchor (0, L) is singular and divergent
    auto cigar = build_gallery("cigar");
    IsothermalSheet gsheet(cigar.data);
    const auto gres = blowup_integral(gsheet.view(), 0.0, cigar.param_L, 0.5,
                                      default_window_sequence(0.5, 5));
    CHECK(gres.divergent);
}

TEST_CASE("mixed norm table matches the strict 1/p + 1/q > 1 criterion") {
    auto circle = build_gallery("shrinking_circle");
    IsothermalSheet sheet(circle.data);
    const std::vector<double> ps{1.1, 2.0, 4.0};
    const std::vector<double> qs{1.1, 2.0, 4.0};
    const auto table = mixed_norm_table(sheet, ps, qs, 0.0, 0.5 * kPi);
    for (const auto& e : table) {
        const double crit = 1.0 / e.p + 1.0 / e.q;
        if (std::fabs(crit - 1.0) < 0.05) {
            CHECK(e.verdict == NormVerdict::inconclusive);
        } else if (crit > 1.0) {
            CHECK(e.verdict == NormVerdict::finite);
        } else {
            CHECK(e.verdict == NormVerdict::divergent);
        }
    }

    auto line = build_gallery("plane");
    IsothermalSheet lsheet(line.data);
    CHECK_THROWS_AS(mixed_norm_table(lsheet, ps, qs, 0.0, 1.0), RequiresPeriodic);
}

TEST_CASE("orthogonal ray: isothermal sheet is static, sheared sheet is linear") {
    auto circle = build_gallery("shrinking_circle");
    IsothermalSheet sheet(circle.data);
    auto ray = trace_orthogonal_ray(sheet.view(), 0.8, 1.2, 1.0);
    for (double t : {0.3, 0.7, 1.1}) CHECK(ray.eval(t) == doctest::Approx(0.8).epsilon(1e-12));

    // constant <gamma_s,gamma_t>/|gamma_s|^2 = kappa: r(t) = s0 - kappa (t - t0)
    const double kappa = 0.25, b = 0.6;
    SheetView v;
    v.eval = [kappa, b](double s, double t) { return Vec2{s + kappa * t, b * t}; };
    v.ds = [](double, double) { return Vec2{1.0, 0.0}; };
    v.dt = [kappa, b](double, double) { return Vec2{kappa, b}; };
    auto ray2 = trace_orthogonal_ray(v, 1.0, 2.0, 1.5);
    for (double t : {0.6, 1.2, 1.9})
        CHECK(ray2.eval(t) == doctest::Approx(1.0 - kappa * (t - 2.0)).epsilon(1e-9));
}

TEST_CASE("orthogonal ray on the arclength-reparameterized shrinking circle") {
    // native circle sheet, re-parameterized by arclength per slice; closed
    // form: sigma(s, t) = s cos t, <g_sigma, g_t> = sigma tan t
    SheetView base;
    base.eval = [](double s, double t) {
        return Vec2{std::cos(t) * std::cos(s), std::cos(t) * std::sin(s)};
    };
    base.ds = [](double s, double t) {
        return Vec2{-std::cos(t) * std::sin(s), std::cos(t) * std::cos(s)};
    };
    base.dt = [](double s, double t) {
        return Vec2{-std::sin(t) * std::cos(s), -std::sin(t) * std::sin(s)};
    };
    SheetView slice = slice_arclength_view(base, 0.0, -2.5, 2.5);

    const double t0 = 1.5, s0 = 0.4, eps = 1.2;
    auto ray = trace_orthogonal_ray(slice, s0, t0, eps);
    // closed-form ray: r(t) = s0 cos t / cos t0
    for (double t : {0.4, 0.9, 1.45})
        CHECK(ray.eval(t) == doctest::Approx(s0 * std::cos(t) / std::cos(t0)).epsilon(1e-6));
    CHECK(orthogonal_ray_residual(slice, ray) <= 1e-7);
}

TEST_CASE("orthogonal ray reports a singular path") {
    auto cigar = build_gallery("cigar");
    IsothermalSheet sheet(cigar.data);
    // path through the singular region: |gamma_s| = 0 inside K_sing
    CHECK_THROWS_AS(trace_orthogonal_ray(sheet.view(), 0.0, 1.4, 1.0), SingularOnPath);
}
