#pragma once

#include <vector>

#include "maxsheet/interp.hpp"
#include "maxsheet/ode.hpp"
#include "maxsheet/sheet.hpp"
#include "maxsheet/tolerances.hpp"

namespace maxsheet {

struct Rect {
    double s_lo, s_hi, t_lo, t_hi;
    bool contains(double s, double t) const {
        return s >= s_lo && s <= s_hi && t >= t_lo && t <= t_hi;
    }
};

// A time-graph parameterization with |gamma_s| = 1 on a window, the input
// gauge for isothermalization.
struct GraphParamSheet {
    SheetView view;
    Rect window;
};

struct Characteristic {
    double seed;      // s(0)
    OdeSolution path; // s(t)
};

// Solves ds/dt = -<gamma_s, gamma_t> from each seed at t = 0 over [t_lo, t_hi]
// (split at 0 when the range straddles it). Throws WindowExit if a curve
// leaves the window.
std::vector<Characteristic> solve_characteristics(const GraphParamSheet& sheet,
                                                  const std::vector<double>& seeds,
                                                  double t_lo, double t_hi,
                                                  double tau_ode = 1e-9);

struct IsothermalizeResult {
    MonotoneMap rho;       // s -> s' on the t = 0 slice
    SheetView sheet;       // the re-parameterized sheet gamma'(s', t)
    double sp_lo, sp_hi;   // image of [s_lo, s_hi] under rho
    Rect window;           // original window (for t-range bookkeeping)
};

// Constructive content of the isothermalization lemma: choose rho with
// rho' = |det g(s,0)|^{-1/2}, transport it along characteristics, and return
// the sheet in the new coordinates with exact first-derivative formulas.
IsothermalizeResult isothermalize(const GraphParamSheet& sheet,
                                  Tolerances tol = Tolerances::analytic(),
                                  int rho_knots = 512);

// Worst gauge residuals of a sheet view over a sample grid.
struct GaugeResiduals {
    double orthogonality = 0.0;
    double speed = 0.0;
};
GaugeResiduals gauge_residuals(const SheetView& view, double s_lo, double s_hi,
                               double t_lo, double t_hi, int n = 24);

// Re-parameterizes each t-slice of a sheet by arclength measured from s_ref.
// gamma_t comes from a central difference of the slice map; gamma_s is exact.
SheetView slice_arclength_view(SheetView base, double s_ref, double s_lo, double s_hi);

} // namespace maxsheet
