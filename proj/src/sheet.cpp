#include "maxsheet/sheet.hpp"

#include <cmath>

#include "maxsheet/errors.hpp"
#include "maxsheet/parallel.hpp"

namespace maxsheet {

namespace {

Vec2 richardson(const std::function<Vec2(double)>& g, double h) {
    const Vec2 d1 = (g(h) - g(-h)) / (2.0 * h);
    const Vec2 d2 = (g(0.5 * h) - g(-0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

Vec2 SheetView::second_ss(double s, double t, double h) const {
    if (dss) return dss(s, t);
    return richardson([&](double e) { return ds(s + e, t); }, h);
}

Vec2 SheetView::second_st(double s, double t, double h) const {
    if (dst) return dst(s, t);
    return richardson([&](double e) { return ds(s, t + e); }, h);
}

Vec2 SheetView::second_tt(double s, double t, double h) const {
    if (dtt) return dtt(s, t);
    return richardson([&](double e) { return dt(s, t + e); }, h);
}

IsothermalSheet::IsothermalSheet(InitialData data)
    : data_(std::make_shared<InitialData>(std::move(data))) {}

void IsothermalSheet::check_domain(double s, double t) const {
    if (!data_->in_window(s + t) || !data_->in_window(s - t))
        throw DomainExceeded("evolution point (s,t) leaves the data window");
}

Vec2 IsothermalSheet::eval(double s, double t) const {
    check_domain(s, t);
    const double x = s + t, y = s - t;
    // the velocity integral is assembled from panels inside [y, x] only, so
    // the value depends on nothing outside the domain of dependence
    return 0.5 * (data_->curve(x) + data_->curve(y) + data_->W_between(y, x));
}

Vec2 IsothermalSheet::ds(double s, double t) const {
    check_domain(s, t);
    return 0.5 * (data_->a_plus(s + t) - data_->a_minus(s - t));
}

Vec2 IsothermalSheet::dt(double s, double t) const {
    check_domain(s, t);
    return 0.5 * (data_->a_plus(s + t) + data_->a_minus(s - t));
}

Vec2 IsothermalSheet::dss(double s, double t) const {
    check_domain(s, t);
    return 0.5 * (data_->a_plus_deriv(s + t) - data_->a_minus_deriv(s - t));
}

Vec2 IsothermalSheet::dst(double s, double t) const {
    check_domain(s, t);
    return 0.5 * (data_->a_plus_deriv(s + t) + data_->a_minus_deriv(s - t));
}

bool IsothermalSheet::has_second() const {
    return data_->curve_provider().has_second_deriv() &&
           data_->velocity_provider().has_deriv();
}

SheetView IsothermalSheet::view() const {
    SheetView v;
    v.eval = [this](double s, double t) { return eval(s, t); };
    v.ds = [this](double s, double t) { return ds(s, t); };
    v.dt = [this](double s, double t) { return dt(s, t); };
    if (has_second()) {
        v.dss = [this](double s, double t) { return dss(s, t); };
        v.dst = [this](double s, double t) { return dst(s, t); };
        v.dtt = [this](double s, double t) { return dtt(s, t); };
    }
    return v;
}

GridResult evaluate_grid(const IsothermalSheet& sheet, const std::vector<double>& s_grid,
                         const std::vector<double>& t_grid) {
    // validate corners first so failure does not depend on scheduling
    for (double t : t_grid) {
        sheet.check_domain(s_grid.front(), t);
        sheet.check_domain(s_grid.back(), t);
    }
    GridResult out;
    out.s_grid = s_grid;
    out.t_grid = t_grid;
    out.samples.resize(s_grid.size() * t_grid.size());
    parallel_for(static_cast<int>(t_grid.size()), [&](int it) {
        const double t = t_grid[it];
        GridSample* row = out.samples.data() + static_cast<size_t>(it) * s_grid.size();
        for (size_t is = 0; is < s_grid.size(); ++is) {
            const double s = s_grid[is];
            row[is] = {sheet.eval(s, t), sheet.ds(s, t), sheet.dt(s, t)};
        }
    });
    return out;
}

SurfaceMesh mesh_export(const IsothermalSheet& sheet, const std::vector<double>& s_grid,
                        const std::vector<double>& t_grid) {
    if (s_grid.size() < 2 || t_grid.size() < 2)
        throw Error("mesh_export: grid must be at least 2x2");
    const GridResult g = evaluate_grid(sheet, s_grid, t_grid);
    SurfaceMesh mesh;
    mesh.vertices.reserve(g.samples.size());
    for (size_t it = 0; it < t_grid.size(); ++it)
        for (size_t is = 0; is < s_grid.size(); ++is) {
            const Vec2 p = g.at(static_cast<int>(is), static_cast<int>(it)).gamma;
            mesh.vertices.push_back({t_grid[it], p.x, p.y});
        }
    const int ns = static_cast<int>(s_grid.size());
    for (int it = 0; it + 1 < static_cast<int>(t_grid.size()); ++it)
        for (int is = 0; is + 1 < ns; ++is) {
            const int a = it * ns + is;
            const int b = it * ns + is + 1;
            const int c = (it + 1) * ns + is + 1;
            const int d = (it + 1) * ns + is;
            mesh.triangles.push_back({a, b, c});
            mesh.triangles.push_back({a, c, d});
        }
    return mesh;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
    return g;
}

} // namespace maxsheet
