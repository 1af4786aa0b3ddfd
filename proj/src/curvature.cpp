#include "maxsheet/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxsheet/errors.hpp"
#include "maxsheet/quadrature.hpp"

namespace maxsheet {

CrossSectionCurvature cross_section_curvature(const SheetView& sheet, double s, double t,
                                              const Tolerances& tol) {
    CrossSectionCurvature out;
    const Vec2 gs = sheet.ds(s, t);
    const double speed = gs.norm();
    if (speed <= tol.sing) return out; // on K_sing both conventions degenerate

    const Vec2 gss = sheet.second_ss(s, t);
    out.kappa_std = cross(gs, gss) / (speed * speed * speed);

    const Vec2 gt = sheet.dt(s, t);
    const double vn = gt.norm();
    if (vn > tol.sing) {
        const Vec2 n = gt / vn;
        out.k_paper = dot(gss, n) / gs.norm2();
    }
    return out;
}

double mean_curvature_scalar(const SheetView& sheet, double s, double t,
                             const Tolerances& tol) {
    const Vec2 gs = sheet.ds(s, t);
    const Vec2 gt = sheet.dt(s, t);
    const double gt2 = gt.norm2();
    if (gt2 >= 1.0 - tol.timelike) throw NotTimelike("mean curvature: point not timelike");
    const double vn = std::sqrt(gt2);
    if (vn <= tol.sing)
        throw UndefinedValue("mean curvature: cross-section normal undefined (gamma_t = 0)");
    const Vec2 n = gt / vn;

    const double root = std::sqrt(1.0 - gt2);
    const double E = gs.norm2();
    const double G = -1.0 + gt2;
    const double e = -dot(sheet.second_ss(s, t), n) / root;
    const double g = -dot(sheet.second_tt(s, t), n) / root;
    return e / E + g / G;
}

double blowup_identity_residual(const SheetView& sheet, double s, double t, double fd_step,
                                const Tolerances& tol) {
    // force the finite-difference path so the residual tracks the step
    SheetView fd = sheet;
    fd.dss = nullptr;
    fd.dst = nullptr;
    fd.dtt = nullptr;
    const Vec2 gt = fd.dt(s, t);
    const double gt2 = gt.norm2();
    const Vec2 gss = fd.second_ss(s, t, fd_step);
    const Vec2 gtt = fd.second_tt(s, t, fd_step);
    if (gt.norm() <= tol.sing) {
        if (gss.norm() <= tol.curv && gtt.norm() <= tol.curv) return 0.0; // flat point
        throw UndefinedValue("identity residual: normal undefined at non-flat point");
    }
    if (gt2 >= 1.0 - tol.timelike) throw NotTimelike("identity residual: point not timelike");

    const Vec2 gs = fd.ds(s, t);
    const Vec2 n = gt / gt.norm();
    const double k = dot(gss, n) / gs.norm2();
    const double root = std::sqrt(1.0 - gt2);
    const double E = gs.norm2();
    const double e = -dot(gss, n) / root;
    const double g = -dot(gtt, n) / root;
    const double h = e / E + g / (-1.0 + gt2);
    const double lhs = root * h + k;
    const double rhs = dot(gtt, n) / (1.0 - gt2);
    return std::fabs(lhs - rhs);
}

std::vector<double> default_window_sequence(double eps, int count) {
    std::vector<double> d(count);
    double f = 0.1;
    for (int j = 0; j < count; ++j) {
        d[j] = eps * f;
        f *= f;
    }
    return d;
}

namespace {

// integral of fn over [a, b] with dyadic panels refining towards the
// singular time t0 > b; each panel sees bounded relative variation
double integrate_towards(const std::function<double(double)>& fn, double a, double b,
                         double t0) {
    double total = 0.0;
    double left = a;
    int guard = 0;
    while (left < b && ++guard < 4000) {
        double right = std::min(b, t0 - 0.5 * (t0 - left));
        if (!(right > left)) right = b;
        total += integrate(fn, left, right, 1e-13 * std::max(1.0, std::fabs(total)) + 1e-15);
        left = right;
    }
    return total;
}

double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n < 3) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    const double a = (n * sxy - sx * sy) / denom;
    const double b = (sy - a * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (size_t i = 0; i < n; ++i) {
        const double fit = a * x[i] + b;
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    if (ss_tot == 0.0) return 1.0;
    return 1.0 - ss_res / ss_tot;
}

} // namespace

BlowupResult blowup_integral(const SheetView& sheet, double s0, double t0, double eps,
                             const std::vector<double>& window_sequence, double tau_anchor) {
    if (sheet.ds(s0, t0).norm() > tau_anchor)
        throw NotSingularAnchor("blowup_integral: anchor is not on K_sing");

    auto integrand = [&sheet, s0](double t) {
        const auto k = cross_section_curvature(sheet, s0, t);
        return k.kappa_std ? std::fabs(*k.kappa_std) : 0.0;
    };

    BlowupResult out;
    out.deltas = window_sequence;
    std::sort(out.deltas.begin(), out.deltas.end(), std::greater<double>());
    const double a = t0 - eps;
    for (double d : out.deltas)
        out.partials.push_back(integrate_towards(integrand, a, t0 - d, t0));

    const size_t n = out.partials.size();
    if (n >= 3) {
        double gmin = std::numeric_limits<double>::infinity();
        for (size_t i = n - 2; i < n; ++i) {
            const double prev = out.partials[i - 1];
            gmin = std::min(gmin, prev > 0.0 ? out.partials[i] / prev
                                             : std::numeric_limits<double>::infinity());
        }
        out.growth_min = gmin;
        std::vector<double> x, y;
        for (size_t i = 0; i < n; ++i) {
            x.push_back(std::log(1.0 / out.deltas[i]));
            y.push_back(out.partials[i]);
        }
        out.log_fit_r2 = linear_fit_r2(x, y);
        out.divergent = gmin >= 1.5 && out.log_fit_r2 >= 0.99;
    }
    return out;
}

const char* to_string(NormVerdict v) {
    switch (v) {
        case NormVerdict::finite: return "finite";
        case NormVerdict::divergent: return "divergent";
        case NormVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<NormTableEntry> mixed_norm_table(const IsothermalSheet& sheet,
                                             const std::vector<double>& p_list,
                                             const std::vector<double>& q_list,
                                             double t_lo, double t_sing,
                                             double near_critical_band) {
    if (!sheet.data().periodic())
        throw RequiresPeriodic("mixed_norm_table needs closed (periodic) cross sections");
    const double period = sheet.data().period();
    const SheetView view = sheet.view();

    // inner L^p over arclength, fixed composite panels over one period
    auto inner_lp = [&](double p, double t) {
        const int panels = 32;
        double total = 0.0;
        for (int i = 0; i < panels; ++i) {
            const double a = i * period / panels;
            const double b = (i + 1) * period / panels;
            double err;
            total += gk15(
                [&](double s) {
                    const Vec2 gs = view.ds(s, t);
                    const auto k = cross_section_curvature(view, s, t);
                    const double kv = k.kappa_std ? std::fabs(*k.kappa_std) : 0.0;
                    return std::pow(kv, p) * gs.norm();
                },
                a, b, err);
        }
        return std::pow(total, 1.0 / p);
    };

    const std::vector<double> deltas = default_window_sequence(t_sing - t_lo, 5);
    std::vector<NormTableEntry> table;
    for (double p : p_list)
        for (double q : q_list) {
            std::vector<double> truncations;
            double left = t_lo;
            double acc_q = 0.0; // accumulated integral of (inner)^q
            for (size_t j = deltas.size(); j-- > 0;) {
                const double right = t_sing - deltas[j];
                // dyadic panels toward the singular time within [left, right]
                double a = left;
                while (a < right) {
                    const double b = std::min(right, t_sing - 0.5 * (t_sing - a));
                    double err;
                    acc_q += gk15([&](double t) { return std::pow(inner_lp(p, t), q); },
                                  a, b, err);
                    if (b >= right) break;
                    a = b;
                }
                left = right;
                truncations.push_back(std::pow(acc_q, 1.0 / q));
            }

            NormTableEntry ent;
            ent.p = p;
            ent.q = q;
            ent.last_value = truncations.back();
            const double crit = 1.0 / p + 1.0 / q - 1.0;
            if (std::fabs(crit) < near_critical_band) {
                ent.verdict = NormVerdict::inconclusive;
            } else {
                double gmin = std::numeric_limits<double>::infinity();
                double gmax = 0.0;
                for (size_t i = truncations.size() - 2; i < truncations.size(); ++i) {
                    const double g = truncations[i] / truncations[i - 1];
                    gmin = std::min(gmin, g);
                    gmax = std::max(gmax, g);
                }
                if (gmin >= 1.5)
                    ent.verdict = NormVerdict::divergent;
                else if (gmax <= 1.1)
                    ent.verdict = NormVerdict::finite;
                else
                    ent.verdict = NormVerdict::inconclusive;
            }
            table.push_back(ent);
        }
    return table;
}

OdeSolution trace_orthogonal_ray(const SheetView& sheet, double s0, double t0, double eps,
                                 const Tolerances& tol) {
    if (sheet.ds(s0, t0).norm() <= tol.sing)
        throw SingularOnPath("orthogonal ray anchored on K_sing");
    bool singular = false;
    auto rhs = [&sheet](double t, double r) {
        const Vec2 gs = sheet.ds(r, t);
        return -dot(gs, sheet.dt(r, t)) / gs.norm2();
    };
    auto stop = [&](double t, double r) {
        (void)t;
        if (sheet.ds(r, t).norm() <= tol.sing) {
            singular = true;
            return true;
        }
        return false;
    };
    OdeSolution sol = solve_ode(rhs, t0, s0, t0 - eps, tol.ode, stop);
    if (singular) throw SingularOnPath("orthogonal ray hit K_sing before t0 - eps");
    return sol;
}

double orthogonal_ray_residual(const SheetView& sheet, const OdeSolution& ray, int samples) {
    const double t1 = ray.t.front(), t0 = ray.t.back();
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    const double h = 1e-6 * std::max(1.0, hi - lo);
    double worst = 0.0;
    for (int i = 1; i < samples; ++i) {
        const double t = lo + (hi - lo) * i / samples;
        if (t - h < lo || t + h > hi) continue;
        const double rdot = (ray.eval(t + h) - ray.eval(t - h)) / (2.0 * h);
        const double r = ray.eval(t);
        const Vec2 gs = sheet.ds(r, t);
        const Vec2 gt = sheet.dt(r, t);
        worst = std::max(worst, std::fabs(rdot * gs.norm2() + dot(gs, gt)));
    }
    return worst;
}

} // namespace maxsheet
