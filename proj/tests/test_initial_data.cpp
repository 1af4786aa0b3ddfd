#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "maxsheet/errors.hpp"
#include "maxsheet/gallery.hpp"
#include "maxsheet/initial_data.hpp"
#include "maxsheet/quadrature.hpp"

using namespace maxsheet;

namespace {

std::shared_ptr<AnalyticCurve> unit_circle() {
    return std::make_shared<AnalyticCurve>(
        [](double s) { return Vec2{std::cos(s), std::sin(s)}; },
        [](double s) { return Vec2{-std::sin(s), std::cos(s)}; },
        [](double s) { return Vec2{-std::cos(s), -std::sin(s)}; },
        Domain::periodic_domain(kTwoPi), [](double s) { return s + 0.5 * kPi; }, kTwoPi);
}

} // namespace

TEST_CASE("normalize: straight line rescales to unit speed") {
    auto c = std::make_shared<AnalyticCurve>(
        [](double s) { return Vec2{2.0 * s, 0.0}; }, [](double) { return Vec2{2.0, 0.0}; },
        Domain::all());
    InitialData d = normalize_initial_data(c, std::make_shared<ZeroVelocity>());
    for (double sig : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
        CHECK(d.curve(sig).x == doctest::Approx(sig).epsilon(1e-9));
        CHECK(std::fabs(d.curve(sig).y) < 1e-12);
        CHECK(d.curve_deriv(sig).x == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("normalize: circle with normal velocity 0.6 gives |c'| = 0.8") {
    auto c = unit_circle();
    // v = 0.6 * perp(U0) = -0.6 * (cos s, sin s)
    auto v = std::make_shared<AnalyticVelocity>(
        [](double s) { return Vec2{-0.6 * std::cos(s), -0.6 * std::sin(s)}; },
        [](double s) { return Vec2{0.6 * std::sin(s), -0.6 * std::cos(s)}; });
    InitialData d = normalize_initial_data(c, v);

    CHECK(d.periodic());
    CHECK(d.period() == doctest::Approx(kTwoPi / 0.8).epsilon(1e-10));
    for (double sig : {0.0, 0.7, 2.0, 5.0}) {
        // closed form: c(sigma) = (cos 0.8 sigma, sin 0.8 sigma)
        CHECK((d.curve(sig) - Vec2{std::cos(0.8 * sig), std::sin(0.8 * sig)}).norm() < 1e-7);
        CHECK(d.curve_deriv(sig).norm() == doctest::Approx(0.8).epsilon(1e-10));
        CHECK(d.mu(sig) == doctest::Approx(0.6).epsilon(1e-10));
        // exact gauge identities by construction
        CHECK(std::fabs(dot(d.curve_deriv(sig), d.velocity(sig))) < 1e-13);
        CHECK(std::fabs(d.curve_deriv(sig).norm2() + d.velocity(sig).norm2() - 1.0) < 1e-13);
    }

    // independent oracle: accumulate d sigma/ds = |c'|/sqrt(1-mu^2) = 1.25 directly
    const double want = integrate([](double) { return 1.0 / 0.8; }, 0.0, kTwoPi, 1e-12);
    CHECK(d.period() == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("normalize: already normalized data returned unchanged") {
    auto c = unit_circle();
    auto v = std::make_shared<ZeroVelocity>();
    InitialData d = normalize_initial_data(c, v);
    // same providers: residuals were within tolerance, so no re-wrap happened
    for (double s : {0.0, 1.0, 4.0})
        CHECK((d.curve(s) - c->eval(s)).norm() == 0.0);
}

TEST_CASE("normalize rejects non-immersions and non-timelike velocity") {
    auto cusp = std::make_shared<AnalyticCurve>(
        [](double s) { return Vec2{s * s, s * s * s}; },
        [](double s) { return Vec2{2.0 * s, 3.0 * s * s}; }, Domain::interval(-1.0, 1.0));
    CHECK_THROWS_AS(normalize_initial_data(cusp, std::make_shared<ZeroVelocity>()),
                    NotImmersed);

    auto line = std::make_shared<AnalyticCurve>(
        [](double s) { return Vec2{s, 0.0}; }, [](double) { return Vec2{1.0, 0.0}; },
        Domain::all());
    auto fast = std::make_shared<AnalyticVelocity>([](double) { return Vec2{0.0, 1.0}; });
    CHECK_THROWS_AS(normalize_initial_data(line, fast), NotTimelike);
}

TEST_CASE("angular lift: circle, line, and coarse-grid error") {
    auto c = unit_circle();
    std::vector<double> grid;
    for (int i = 0; i <= 128; ++i) grid.push_back(kTwoPi * i / 128);
    LiftTable lift = angular_lift(*c, grid, 1e-3);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(lift.theta[i] == doctest::Approx(grid[i] + 0.5 * kPi).epsilon(1e-12));
    CHECK(lift.turn_per_period == doctest::Approx(kTwoPi));

    std::vector<double> coarse{0.0, 3.2, 6.4};
    CHECK_THROWS_AS(angular_lift(*c, coarse, 1e-3), GridTooCoarse);
}

TEST_CASE("lift branch starts in (-pi, pi] and is consistent with the tangent") {
    auto entry = build_gallery("figure_eight"); // table-based lift path
    const InitialData& d = entry.data;
    const double th0 = d.theta(d.window_lo());
    CHECK(th0 > -kPi);
    CHECK(th0 <= kPi);
    for (int i = 0; i <= 200; ++i) {
        const double s = d.window_lo() + (d.window_hi() - d.window_lo()) * i / 200;
        const Vec2 u = d.curve_deriv(s) / d.curve_deriv(s).norm();
        CHECK((Vec2{std::cos(d.theta(s)), std::sin(d.theta(s))} - u).norm() < 1e-9);
    }
}

TEST_CASE("cigar tangent angle spans exactly [-pi/2, pi/2]") {
    auto entry = build_gallery("cigar");
    const InitialData& d = entry.data;
    double mn = 1e9, mx = -1e9;
    for (int i = 0; i <= 2000; ++i) {
        const double s = -3.0 + 6.0 * i / 2000;
        mn = std::min(mn, d.theta(s));
        mx = std::max(mx, d.theta(s));
    }
    CHECK(mn == doctest::Approx(-0.5 * kPi).epsilon(1e-12));
    CHECK(mx == doctest::Approx(0.5 * kPi).epsilon(1e-12));
}

TEST_CASE("null directions: line, circle, and the asin(0.6) example") {
    auto line_entry = build_gallery("plane");
    CHECK((line_entry.data.a_plus(0.3) - Vec2{1.0, 0.0}).norm() < 1e-15);
    CHECK((line_entry.data.a_minus(0.3) - Vec2{-1.0, 0.0}).norm() < 1e-15);

    auto circle_entry = build_gallery("shrinking_circle");
    CHECK((circle_entry.data.a_plus(0.0) - Vec2{0.0, 1.0}).norm() < 1e-15);
    CHECK((circle_entry.data.a_minus(0.0) - Vec2{0.0, -1.0}).norm() < 1e-15);

    // theta = 0, mu = 0.6: alpha+ = asin 0.6, alpha- = -asin 0.6 - pi
    TangentAngleCurve::Profile p;
    p.theta = [](double) { return 0.0; };
    p.theta_dot = [](double) { return 0.0; };
    p.speed = [](double) { return 0.8; };
    p.speed_dot = [](double) { return 0.0; };
    auto curve = std::make_shared<TangentAngleCurve>(p, -5.0, 5.0, Vec2{0, 0}, 0.0, true);
    auto vel = std::make_shared<NormalVelocity>(
        curve, [](double) { return 0.6; }, [](double) { return 0.0; });
    InitialData d(curve, vel, -5.0, 5.0);
    CHECK(d.alpha_plus(1.0) == doctest::Approx(std::asin(0.6)).epsilon(1e-12));
    CHECK(d.alpha_minus(1.0) == doctest::Approx(-std::asin(0.6) - kPi).epsilon(1e-12));
    // rebuild a+- from the lifts and compare against v +- c'
    for (double s : {-2.0, 0.0, 1.5}) {
        CHECK((unit_dir(d.alpha_plus(s)) - d.a_plus(s)).norm() < 1e-12);
        CHECK((unit_dir(d.alpha_minus(s)) - d.a_minus(s)).norm() < 1e-12);
    }
}

TEST_CASE("initial beta lies strictly inside (0, 2 pi) gallery-wide") {
    for (const auto& name : gallery_names()) {
        auto entry = build_gallery(name);
        const InitialData& d = entry.data;
        for (int i = 0; i <= 500; ++i) {
            const double s = entry.scan_s1 + (entry.scan_s2 - entry.scan_s1) * i / 500;
            const double b = d.alpha_plus(s) - d.alpha_minus(s);
            CHECK(b > 0.0);
            CHECK(b < kTwoPi);
        }
    }
}

TEST_CASE("unit null directions across the gallery") {
    for (const auto& name : gallery_names()) {
        auto entry = build_gallery(name);
        double worst = 0.0;
        for (int i = 0; i <= 500; ++i) {
            const double s = entry.scan_s1 + (entry.scan_s2 - entry.scan_s1) * i / 500;
            worst = std::max(worst, std::fabs(entry.data.a_plus(s).norm() - 1.0));
            worst = std::max(worst, std::fabs(entry.data.a_minus(s).norm() - 1.0));
        }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("cached antiderivative W matches direct quadrature") {
    InitialData d = random_smooth_data(17);
    auto vf = [&d](double s) { return d.velocity(s); };
    for (double s : {-6.0, -2.5, 0.0, 1.0, 4.4, 7.9}) {
        const Vec2 direct = integrate(std::function<Vec2(double)>(vf), 0.0, s, 1e-12);
        CHECK((d.W(s) - direct).norm() < 1e-9);
        const Vec2 tail = integrate(std::function<Vec2(double)>(vf), 0.0, -1.0, 1e-12);
        CHECK((d.W_between(-1.0, s) - (direct - tail)).norm() < 1e-9);
    }
}

TEST_CASE("CSV ingestion round-trips a sampled circle") {
    const char* path = "test_curve.csv";
    {
        std::ofstream out(path);
        out << "s,c1,c2,v1,v2\n";
        for (int i = 0; i <= 400; ++i) {
            const double s = -0.2 + 6.7 * i / 400;
            out << s << "," << std::cos(s) << "," << std::sin(s) << ",0,0\n";
        }
    }
    SampledInput in = load_curve_csv(path);
    CHECK(in.curve->kind() == CurveKind::sampled);
    NormalizeOptions opt;
    opt.tol = Tolerances::sampled();
    InitialData d = normalize_initial_data(in.curve, in.velocity, opt);
    for (double s : {0.5, 2.0, 5.0})
        CHECK(std::fabs(d.curve_deriv(s).norm() - 1.0) < 1e-6);
    std::remove(path);

    {
        std::ofstream out("bad_header.csv");
        out << "a,b,c\n1,2,3\n";
    }
    CHECK_THROWS(load_curve_csv("bad_header.csv"));
    std::remove("bad_header.csv");
}
