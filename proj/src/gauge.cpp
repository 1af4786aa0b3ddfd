#include "maxsheet/gauge.hpp"

#include <cmath>
#include <memory>

#include "maxsheet/errors.hpp"
#include "maxsheet/quadrature.hpp"

namespace maxsheet {

namespace {

double char_rhs(const SheetView& v, double s, double t) {
    return -dot(v.ds(s, t), v.dt(s, t));
}

OdeSolution solve_one(const GraphParamSheet& sheet, double seed, double t_end, double tau) {
    bool exited = false;
    auto rhs = [&](double t, double s) { return char_rhs(sheet.view, s, t); };
    auto stop = [&](double /*t*/, double s) {
        if (s < sheet.window.s_lo || s > sheet.window.s_hi) {
            exited = true;
            return true;
        }
        return false;
    };
    OdeSolution sol = solve_ode(rhs, 0.0, seed, t_end, tau, stop);
    if (exited) throw WindowExit("characteristic left the window before the end of t range");
    return sol;
}

// merge backward (t<0) and forward (t>0) halves into one increasing-t path
OdeSolution solve_two_sided(const GraphParamSheet& sheet, double seed, double t_lo,
                            double t_hi, double tau) {
    if (t_lo >= 0.0) return solve_one(sheet, seed, t_hi, tau);
    if (t_hi <= 0.0) {
        OdeSolution bwd = solve_one(sheet, seed, t_lo, tau);
        OdeSolution out;
        for (size_t i = bwd.t.size(); i-- > 0;) {
            out.t.push_back(bwd.t[i]);
            out.y.push_back(bwd.y[i]);
            out.dy.push_back(bwd.dy[i]);
        }
        return out;
    }
    OdeSolution bwd = solve_one(sheet, seed, t_lo, tau);
    OdeSolution fwd = solve_one(sheet, seed, t_hi, tau);
    OdeSolution out;
    for (size_t i = bwd.t.size(); i-- > 1;) {
        out.t.push_back(bwd.t[i]);
        out.y.push_back(bwd.y[i]);
        out.dy.push_back(bwd.dy[i]);
    }
    for (size_t i = 0; i < fwd.t.size(); ++i) {
        out.t.push_back(fwd.t[i]);
        out.y.push_back(fwd.y[i]);
        out.dy.push_back(fwd.dy[i]);
    }
    return out;
}

} // namespace

std::vector<Characteristic> solve_characteristics(const GraphParamSheet& sheet,
                                                  const std::vector<double>& seeds,
                                                  double t_lo, double t_hi, double tau_ode) {
    std::vector<Characteristic> out;
    out.reserve(seeds.size());
    for (double s0 : seeds)
        out.push_back({s0, solve_two_sided(sheet, s0, t_lo, t_hi, tau_ode)});
    return out;
}

IsothermalizeResult isothermalize(const GraphParamSheet& sheet, Tolerances tol, int rho_knots) {
    const Rect w = sheet.window;
    auto view = sheet.view; // copied into the closures below

    // |det g(s,0)| = 1 - |gamma_t|^2 + <gamma_s,gamma_t>^2 in the |gamma_s|=1 gauge
    auto det_abs = [view](double s) {
        const Vec2 gs = view.ds(s, 0.0);
        const Vec2 gt = view.dt(s, 0.0);
        const double f = dot(gs, gt);
        return 1.0 - gt.norm2() + f * f;
    };
    auto rho_dot = [det_abs, &tol](double s) {
        const double d = det_abs(s);
        if (d <= tol.timelike) throw NotTimelike("isothermalize: |det g| vanishes on t = 0");
        return 1.0 / std::sqrt(d);
    };

    std::vector<double> sk(rho_knots), rk(rho_knots);
    const double h = (w.s_hi - w.s_lo) / (rho_knots - 1);
    double acc = 0.0;
    sk[0] = w.s_lo;
    rk[0] = 0.0;
    for (int i = 1; i < rho_knots; ++i) {
        const double a = w.s_lo + (i - 1) * h, b = w.s_lo + i * h;
        acc += integrate(std::function<double(double)>(rho_dot), a, b, 1e-12);
        sk[i] = b;
        rk[i] = acc;
    }
    // basepoint at s = 0 when the window straddles it
    double off = 0.0;
    if (w.s_lo < 0.0 && w.s_hi > 0.0) {
        const int k = static_cast<int>((0.0 - w.s_lo) / h);
        off = rk[k] + integrate(std::function<double(double)>(rho_dot), sk[k], 0.0, 1e-12);
    }
    for (auto& v : rk) v -= off;

    IsothermalizeResult res;
    res.rho = MonotoneMap(sk, rk);
    res.sp_lo = rk.front();
    res.sp_hi = rk.back();
    res.window = w;

    auto rho_map = res.rho;
    const double tau_ode = tol.ode;
    auto foot_of = [rho_map](double sp) { return rho_map.inverse(sp); };
    auto advect = [view, w, tau_ode](double s0, double t) {
        if (t == 0.0) return s0;
        bool exited = false;
        auto rhs = [&view](double tt, double ss) { return char_rhs(view, ss, tt); };
        auto stop = [&](double, double ss) {
            if (ss < w.s_lo || ss > w.s_hi) { exited = true; return true; }
            return false;
        };
        OdeSolution sol = solve_ode(rhs, 0.0, s0, t, tau_ode, stop);
        if (exited) throw WindowExit("isothermalize: characteristic left the window");
        return sol.y.back();
    };

    SheetView out;
    out.eval = [view, foot_of, advect](double sp, double t) {
        return view.eval(advect(foot_of(sp), t), t);
    };
    out.dt = [view, foot_of, advect](double sp, double t) {
        const double s = advect(foot_of(sp), t);
        const Vec2 gs = view.ds(s, t);
        const Vec2 gt = view.dt(s, t);
        return gt - dot(gs, gt) * gs;
    };
    out.ds = [view, foot_of, advect, rho_map](double sp, double t) {
        const double s0 = foot_of(sp);
        const double delta = 1e-5;
        const double xp = advect(s0 + delta, t);
        const double xm = advect(s0 - delta, t);
        const double dX = (xp - xm) / (2.0 * delta);
        const double rd = rho_map.forward_deriv(s0);
        const double s = advect(s0, t);
        return (dX / rd) * view.ds(s, t);
    };
    res.sheet = out;
    return res;
}

GaugeResiduals gauge_residuals(const SheetView& view, double s_lo, double s_hi,
                               double t_lo, double t_hi, int n) {
    GaugeResiduals r;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            const double s = s_lo + (s_hi - s_lo) * i / n;
            const double t = t_lo + (t_hi - t_lo) * j / n;
            const Vec2 gs = view.ds(s, t);
            const Vec2 gt = view.dt(s, t);
            r.orthogonality = std::max(r.orthogonality, std::fabs(dot(gs, gt)));
            r.speed = std::max(r.speed, std::fabs(gs.norm2() + gt.norm2() - 1.0));
        }
    return r;
}

SheetView slice_arclength_view(SheetView base, double s_ref, double s_lo, double s_hi) {
    auto arc = [base, s_ref](double s, double t) {
        auto speed = [&base, t](double u) { return base.ds(u, t).norm(); };
        return integrate(std::function<double(double)>(speed), s_ref, s, 1e-12);
    };
    auto s_of = [base, arc, s_lo, s_hi](double sigma, double t) {
        double a = s_lo, b = s_hi;
        for (int i = 0; i < 40; ++i) { // bracket by bisection
            const double mid = 0.5 * (a + b);
            if (arc(mid, t) < sigma) a = mid; else b = mid;
        }
        double s = 0.5 * (a + b);
        for (int i = 0; i < 8; ++i) { // Newton polish
            const double g = arc(s, t) - sigma;
            const double d = base.ds(s, t).norm();
            if (d <= 0.0) break;
            s -= g / d;
        }
        return s;
    };

    SheetView v;
    v.eval = [base, s_of](double sigma, double t) { return base.eval(s_of(sigma, t), t); };
    v.ds = [base, s_of](double sigma, double t) {
        const Vec2 gs = base.ds(s_of(sigma, t), t);
        return gs / gs.norm();
    };
    v.dt = [base, s_of](double sigma, double t) {
        const double h = 1e-5;
        const Vec2 p = base.eval(s_of(sigma, t + h), t + h);
        const Vec2 m = base.eval(s_of(sigma, t - h), t - h);
        return (p - m) / (2.0 * h);
    };
    return v;
}

} // namespace maxsheet
