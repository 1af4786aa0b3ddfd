#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxsheet/ode.hpp"
#include "maxsheet/sheet.hpp"
#include "maxsheet/tolerances.hpp"

namespace maxsheet {

// Curvatures of the spatial cross-section gamma(., t) at one point.
// kappa_std is the standard planar curvature (gamma_s x gamma_ss)/|gamma_s|^3;
// k_paper uses the orthogonal-gauge formula <gamma_ss, n>/|gamma_s|^2 with
// n = gamma_t/|gamma_t|. Either is empty where its denominator degenerates.
struct CrossSectionCurvature {
    std::optional<double> kappa_std;
    std::optional<double> k_paper;
};
CrossSectionCurvature cross_section_curvature(const SheetView& sheet, double s, double t,
                                              const Tolerances& tol = Tolerances::analytic());

// Mean curvature scalar h = e/E + g/G from the fundamental forms; vanishes on
// exact solutions. Throws NotTimelike at non-timelike points and
// UndefinedValue where the cross-section normal degenerates.
double mean_curvature_scalar(const SheetView& sheet, double s, double t,
                             const Tolerances& tol = Tolerances::analytic());

// Residual of the curvature identity
//   sqrt(1-|gamma_t|^2) h + k = <gamma_tt, n> / (1-|gamma_t|^2),
// with every second derivative taken by centered differences at fd_step.
// Flat points (gamma_t = 0 with vanishing second derivatives) give 0.
double blowup_identity_residual(const SheetView& sheet, double s, double t,
                                double fd_step = 1e-4,
                                const Tolerances& tol = Tolerances::analytic());

struct BlowupResult {
    std::vector<double> deltas;    // shrinking gaps to the singular time
    std::vector<double> partials;  // int |kappa| dt over [t0-eps, t0-delta_j]
    bool divergent = false;
    double growth_min = 0.0;       // smallest of the last three growth factors
    double log_fit_r2 = 0.0;       // fit quality of V ~ a log(1/delta) + b
};

// Default shrinking-gap sequence eps * 10^(-2^j), j = 0..count-1; the
// super-geometric decay turns logarithmic divergence into geometric growth
// of the partial integrals.
std::vector<double> default_window_sequence(double eps, int count = 5);

// Partial integrals of |kappa_std(s0, .)| approaching t0 from below.
// Throws NotSingularAnchor unless |gamma_s(s0, t0)| <= tau_anchor.
BlowupResult blowup_integral(const SheetView& sheet, double s0, double t0, double eps,
                             const std::vector<double>& window_sequence,
                             double tau_anchor = 1e-6);

enum class NormVerdict { finite, divergent, inconclusive };
const char* to_string(NormVerdict v);

struct NormTableEntry {
    double p, q;
    NormVerdict verdict;
    double last_value; // largest computed truncation of the mixed norm
};

// Mixed L^q((t_lo, t_sing); L^p(ds_arc)) norms of the cross-section curvature
// for a periodic sheet, classified by truncation growth. Throws
// RequiresPeriodic for non-periodic data.
std::vector<NormTableEntry> mixed_norm_table(const IsothermalSheet& sheet,
                                             const std::vector<double>& p_list,
                                             const std::vector<double>& q_list,
                                             double t_lo, double t_sing,
                                             double near_critical_band = 0.05);

// Backward solve of r' = -<gamma_s,gamma_t>/|gamma_s|^2 from r(t0) = s0 down
// to t0 - eps. Throws SingularOnPath if |gamma_s| <= tau_sing on the path.
OdeSolution trace_orthogonal_ray(const SheetView& sheet, double s0, double t0, double eps,
                                 const Tolerances& tol = Tolerances::analytic());

// Max residual |r' |gamma_s|^2 + <gamma_s,gamma_t>| of a computed ray,
// sampled densely along the path.
double orthogonal_ray_residual(const SheetView& sheet, const OdeSolution& ray, int samples = 200);

} // namespace maxsheet
