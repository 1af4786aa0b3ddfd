#include <doctest.h>

#include <cmath>

#include "maxsheet/errors.hpp"
#include "maxsheet/gallery.hpp"
#include "maxsheet/io.hpp"
#include "maxsheet/sheet.hpp"

using namespace maxsheet;

TEST_CASE("shrinking circle evolves to (cos t cos s, cos t sin s)") {
    auto entry = build_gallery("shrinking_circle");
    IsothermalSheet sheet(entry.data);
    for (int i = 0; i < 2000; ++i) {
        const Vec2 u = quasi_random_01(i);
        const double s = kTwoPi * u.x;
        const double t = -2.0 + 4.0 * u.y;
        const Vec2 want{std::cos(t) * std::cos(s), std::cos(t) * std::sin(s)};
        CHECK((sheet.eval(s, t) - want).norm() < 1e-12);
    }
    // whole circle collapses to the origin at t = pi/2
    for (double s : {0.0, 1.0, 2.5, 6.0})
        CHECK(sheet.eval(s, 0.5 * kPi).norm() < 1e-12);
}

TEST_CASE("plane stays put for all time") {
    auto entry = build_gallery("plane");
    IsothermalSheet sheet(entry.data);
    for (double t : {-9.0, -1.0, 0.0, 3.0, 9.0})
        for (double s : {-5.0, 0.0, 7.0})
            CHECK((sheet.eval(s, t) - Vec2{s, 0.0}).norm() < 1e-15);
}

TEST_CASE("cigar midpoint hits the origin at t = L") {
    auto entry = build_gallery("cigar");
    const double L = entry.param_L;
    IsothermalSheet sheet(entry.data);
    CHECK((entry.data.curve(L) - Vec2{0.5, 0.0}).norm() < 1e-12);
    CHECK((entry.data.curve(-L) - Vec2{-0.5, 0.0}).norm() < 1e-12);
    CHECK(sheet.eval(0.0, L).norm() < 1e-12);
}

TEST_CASE("initial conditions: gamma(s,0) = c(s), gamma_t(s,0) = v(s)") {
    InitialData d = random_smooth_data(5);
    IsothermalSheet sheet(d);
    for (double s : {-4.0, -0.5, 0.0, 2.2, 6.0}) {
        CHECK((sheet.eval(s, 0.0) - d.curve(s)).norm() < 1e-12);
        CHECK((sheet.dt(s, 0.0) - d.velocity(s)).norm() < 1e-12);
        CHECK((sheet.ds(s, 0.0) - d.curve_deriv(s)).norm() < 1e-12);
    }
}

TEST_CASE("evaluate_grid layout and content") {
    auto entry = build_gallery("shrinking_circle");
    IsothermalSheet sheet(entry.data);

    GridResult one = evaluate_grid(sheet, {1.2}, {0.0});
    CHECK((one.at(0, 0).gamma - entry.data.curve(1.2)).norm() < 1e-15);
    CHECK((one.at(0, 0).gamma_s - entry.data.curve_deriv(1.2)).norm() < 1e-15);
    CHECK(one.at(0, 0).gamma_t.norm() < 1e-15);

    const auto sg = uniform_grid(0.0, kTwoPi, 33);
    GridResult row = evaluate_grid(sheet, sg, {0.5 * kPi});
    for (int i = 0; i < 33; ++i) CHECK(row.at(i, 0).gamma.norm() < 1e-12);

    // time symmetry for v = 0
    GridResult both = evaluate_grid(sheet, sg, {-0.7, 0.7});
    for (int i = 0; i < 33; ++i)
        CHECK((both.at(i, 0).gamma - both.at(i, 1).gamma).norm() < 1e-15);
}

TEST_CASE("mesh export: counts, plane pattern, circle quadric") {
    auto plane = build_gallery("plane");
    IsothermalSheet psheet(plane.data);
    SurfaceMesh pm = mesh_export(psheet, {0.0, 1.0}, {0.0, 1.0});
    CHECK(pm.vertices.size() == 4);
    CHECK(pm.triangles.size() == 2);
    for (const auto& v : pm.vertices) CHECK(v[2] == 0.0); // plane has x2 = 0

    auto entry = build_gallery("shrinking_circle");
    IsothermalSheet sheet(entry.data);
    const auto sg = uniform_grid(0.0, kTwoPi, 48);
    const auto tg = uniform_grid(-1.0, 1.0, 21);
    SurfaceMesh mesh = mesh_export(sheet, sg, tg);
    CHECK(mesh.vertices.size() == sg.size() * tg.size());
    for (const auto& v : mesh.vertices) {
        const double r2 = v[1] * v[1] + v[2] * v[2];
        CHECK(std::fabs(r2 - std::cos(v[0]) * std::cos(v[0])) < 1e-9);
    }

    CHECK_THROWS(mesh_export(sheet, {0.0}, {0.0, 1.0}));
}

TEST_CASE("domain window is enforced") {
    auto entry = build_gallery("grim_reaper"); // window [-40, 40]
    IsothermalSheet sheet(entry.data);
    CHECK_NOTHROW(sheet.eval(0.0, 5.0));
    CHECK_THROWS_AS(sheet.eval(38.0, 5.0), DomainExceeded);
    CHECK_THROWS_AS(evaluate_grid(sheet, {39.0}, {2.0}), DomainExceeded);
}

TEST_CASE("finite propagation: data outside the dependence cone is invisible") {
    // two sampled data sets identical on [-1.5, 1.5], different beyond +-2
    auto build = [](double bump) {
        std::vector<double> s;
        std::vector<Vec2> c, v;
        for (int i = 0; i <= 800; ++i) {
            const double x = -8.0 + 16.0 * i / 800;
            s.push_back(x);
            const double wiggle = std::fabs(x) > 2.0 ? bump * std::sin(3.0 * x) : 0.0;
            c.push_back({x, 0.1 * std::sin(x) + wiggle});
            v.push_back({0.0, 0.2 * std::exp(-x * x) + (std::fabs(x) > 2.0 ? bump : 0.0)});
        }
        return SampledInput{std::make_shared<SampledCurve>(s, c),
                            std::make_shared<SampledVelocity>(s, v)};
    };
    SampledInput a = build(0.0), b = build(0.05);
    InitialData da(a.curve, a.velocity, -8.0, 8.0, Tolerances::sampled());
    InitialData db(b.curve, b.velocity, -8.0, 8.0, Tolerances::sampled());
    IsothermalSheet sa(da), sb(db);
    for (double t : {-0.9, -0.3, 0.4, 0.9})
        for (double s : {-0.4, 0.0, 0.5}) {
            const Vec2 pa = sa.eval(s, t), pb = sb.eval(s, t);
            CHECK(pa.x == pb.x); // bit-identical
            CHECK(pa.y == pb.y);
        }
}

TEST_CASE("derivative evaluators agree with finite differences of eval") {
    InitialData d = random_smooth_data(23);
    IsothermalSheet sheet(d);
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Vec2 u = quasi_random_01(i);
        const double s = -4.0 + 8.0 * u.x;
        const double t = -2.0 + 4.0 * u.y;
        const Vec2 fds = (sheet.eval(s + h, t) - sheet.eval(s - h, t)) / (2 * h);
        const Vec2 fdt = (sheet.eval(s, t + h) - sheet.eval(s, t - h)) / (2 * h);
        worst = std::max(worst, (fds - sheet.ds(s, t)).norm());
        worst = std::max(worst, (fdt - sheet.dt(s, t)).norm());
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("OBJ and grid CSV formats") {
    auto entry = build_gallery("plane");
    IsothermalSheet sheet(entry.data);
    SurfaceMesh mesh = mesh_export(sheet, {0.0, 0.5}, {0.0, 0.25});
    const std::string obj = obj_text(mesh);
    CHECK(obj.substr(0, 2) == "v ");
    CHECK(obj.find("f 1 2 4\n") != std::string::npos);
    CHECK(obj.find("\r") == std::string::npos);

    GridResult g = evaluate_grid(sheet, {0.0, 0.5}, {0.0});
    const std::string csv = grid_csv(g);
    CHECK(csv.rfind("s,t,g1,g2,gs1,gs2,gt1,gt2\n", 0) == 0);
    CHECK(csv.find("0.5,0,0.5,0,1,0,0,0") != std::string::npos);
}
