#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "maxsheet/initial_data.hpp"

namespace maxsheet {

// Non-owning evaluation surface for a parameterized sheet gamma(s,t).
// Second-derivative slots may be empty; fd_* fall back to Richardson
// differences of the first derivatives.
struct SheetView {
    std::function<Vec2(double, double)> eval;
    std::function<Vec2(double, double)> ds;
    std::function<Vec2(double, double)> dt;
    std::function<Vec2(double, double)> dss;
    std::function<Vec2(double, double)> dst;
    std::function<Vec2(double, double)> dtt;

    bool has_second() const { return dss && dst && dtt; }
    Vec2 second_ss(double s, double t, double h = 1e-4) const;
    Vec2 second_st(double s, double t, double h = 1e-4) const;
    Vec2 second_tt(double s, double t, double h = 1e-4) const;
};

// The evolved surface gamma(s,t) in isothermal gauge, evaluated exactly from
// the d'Alembert representation. Derivatives come from the null directions,
// never from finite differencing.
class IsothermalSheet {
public:
    explicit IsothermalSheet(InitialData data);

    Vec2 eval(double s, double t) const;  // (c(x) + c(y) + W(x) - W(y)) / 2
    Vec2 ds(double s, double t) const;    // (a+(x) - a-(y)) / 2
    Vec2 dt(double s, double t) const;    // (a+(x) + a-(y)) / 2
    Vec2 dss(double s, double t) const;   // (a+'(x) - a-'(y)) / 2
    Vec2 dst(double s, double t) const;   // (a+'(x) + a-'(y)) / 2
    Vec2 dtt(double s, double t) const { return dss(s, t); }

    const InitialData& data() const { return *data_; }
    bool has_second() const;
    SheetView view() const;

    void check_domain(double s, double t) const; // throws DomainExceeded

private:
    std::shared_ptr<const InitialData> data_;
};

inline IsothermalSheet evolve(InitialData data) { return IsothermalSheet(std::move(data)); }

// Row-major grid sample; s varies fastest.
struct GridSample {
    Vec2 gamma, gamma_s, gamma_t;
};
struct GridResult {
    std::vector<double> s_grid, t_grid;
    std::vector<GridSample> samples; // samples[it * Ns + is]
    const GridSample& at(int is, int it) const {
        return samples[static_cast<size_t>(it) * s_grid.size() + is];
    }
};
GridResult evaluate_grid(const IsothermalSheet& sheet, const std::vector<double>& s_grid,
                         const std::vector<double>& t_grid);

// Surface mesh of phi(s,t) = (t, gamma^1, gamma^2) over the grid.
struct SurfaceMesh {
    std::vector<std::array<double, 3>> vertices;  // (x0, x1, x2)
    std::vector<std::array<int, 3>> triangles;    // 0-based corner indices
};
SurfaceMesh mesh_export(const IsothermalSheet& sheet, const std::vector<double>& s_grid,
                        const std::vector<double>& t_grid);

std::vector<double> uniform_grid(double lo, double hi, int count);

} // namespace maxsheet
