#include "maxsheet/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "maxsheet/errors.hpp"

namespace maxsheet {

namespace {

double beta_mod(double beta) { return mod_two_pi_centered(beta); }

// index of the 2*pi band containing beta
long band(double beta) { return static_cast<long>(std::floor(beta / kTwoPi)); }

struct Lattice {
    // s_i = s1 + i*h, t_j = -T + j*h; x and y live on u_m = s1 - T + m*h
    double s1, T, h;
    int n; // i in [0, n], j in [0, 2m?]: both i and j run 0..n with t = -T + j*h
    std::vector<double> alpha_p, alpha_m;

    double s_of(int i) const { return s1 + i * h; }
    double t_of(int j) const { return -T + j * h; }
    double beta(int i, int j) const { return alpha_p[i + j] - alpha_m[i - j + n]; }
    bool inside(int i, int j) const {
        const double t = std::fabs(t_of(j));
        const double s = s_of(i);
        return s1 + t <= s + 1e-12 * h && s <= s1 + 2 * T - t + 1e-12 * h;
    }
};

} // namespace

const char* to_string(ComponentClass c) {
    switch (c) {
        case ComponentClass::isolated: return "isolated";
        case ComponentClass::segment: return "segment";
        case ComponentClass::region: return "region";
    }
    return "?";
}

const char* to_string(TangentClass c) {
    switch (c) {
        case TangentClass::c1_curve_with_tangent_extension:
            return "c1_curve_with_tangent_extension";
        case TangentClass::cusp_pair: return "cusp_pair";
        case TangentClass::degenerate_no_extension: return "degenerate_no_extension";
    }
    return "?";
}

SingularSet find_singular_set(const InitialData& data, const CharacteristicDiamond& d,
                              double grid_step) {
    const double width = d.s2 - d.s1;
    if (!(width > 0.0)) throw Error("find_singular_set: need s1 < s2");
    const double tau = data.tol().sing;

    Lattice lat;
    lat.s1 = d.s1;
    lat.T = 0.5 * width;
    lat.n = std::max(8, static_cast<int>(std::ceil(width / grid_step)));
    lat.h = width / lat.n;
    const int n = lat.n;

    lat.alpha_p.resize(2 * n + 1);
    lat.alpha_m.resize(2 * n + 1);
    for (int m = 0; m <= 2 * n; ++m) {
        const double u = d.s1 - lat.T + m * lat.h;
        lat.alpha_p[m] = data.alpha_plus(u);
        lat.alpha_m[m] = data.alpha_minus(u);
    }

    // Lipschitz estimate of beta along either coordinate
    double lip = 0.0;
    for (int m = 0; m + 1 <= 2 * n; ++m) {
        lip = std::max(lip, std::fabs(lat.alpha_p[m + 1] - lat.alpha_p[m]) / lat.h);
        lip = std::max(lip, std::fabs(lat.alpha_m[m + 1] - lat.alpha_m[m]) / lat.h);
    }
    const double tau_flag = std::max(tau, 2.4 * lip * lat.h);

    auto beta_at = [&data](double s, double t) {
        return data.alpha_plus(s + t) - data.alpha_minus(s - t);
    };

    // flag mask
    const int stride = n + 1;
    std::vector<char> flag(static_cast<size_t>(stride) * stride, 0);
    auto idx = [stride](int i, int j) { return static_cast<size_t>(j) * stride + i; };

    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            if (!lat.inside(i, j)) continue;
            const double b = lat.beta(i, j);
            bool hit = std::fabs(beta_mod(b)) <= tau_flag;
            if (!hit) {
                const long q = band(b);
                const int di[4] = {1, -1, 0, 0};
                const int dj[4] = {0, 0, 1, -1};
                for (int e = 0; e < 4 && !hit; ++e) {
                    const int i2 = i + di[e], j2 = j + dj[e];
                    if (i2 < 0 || i2 > n || j2 < 0 || j2 > n || !lat.inside(i2, j2)) continue;
                    if (band(lat.beta(i2, j2)) != q) hit = true;
                }
            }
            flag[idx(i, j)] = hit ? 1 : 0;
        }

    // components by 8-neighbour adjacency
    std::vector<int> comp(flag.size(), -1);
    int n_comp = 0;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            if (!flag[idx(i, j)] || comp[idx(i, j)] >= 0) continue;
            std::deque<std::pair<int, int>> queue{{i, j}};
            comp[idx(i, j)] = n_comp;
            while (!queue.empty()) {
                auto [ci, cj] = queue.front();
                queue.pop_front();
                for (int dj = -1; dj <= 1; ++dj)
                    for (int di = -1; di <= 1; ++di) {
                        const int i2 = ci + di, j2 = cj + dj;
                        if (i2 < 0 || i2 > n || j2 < 0 || j2 > n) continue;
                        if (!flag[idx(i2, j2)] || comp[idx(i2, j2)] >= 0) continue;
                        comp[idx(i2, j2)] = n_comp;
                        queue.push_back({i2, j2});
                    }
            }
            ++n_comp;
        }

    SingularSet out;
    out.grid_step = lat.h;
    out.components.resize(n_comp);
    for (int c = 0; c < n_comp; ++c)
        out.components[c] = {c, ComponentClass::segment,
                             std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity(),
                             0};

    std::vector<char> is_region(n_comp, 0);

    auto refine_edge = [&](double sa, double ta, double sb, double tb,
                           double ba, double bb) -> std::optional<SingularPoint> {
        // bisection of beta towards the 2*pi multiple separating the bands
        const double target = kTwoPi * std::max(band(ba), band(bb));
        double fa = ba - target;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double bm = beta_at(sa + mid * (sb - sa), ta + mid * (tb - ta)) - target;
            if ((bm <= 0.0) == (fa <= 0.0)) lo = mid; else hi = mid;
        }
        const double u = 0.5 * (lo + hi);
        const double s = sa + u * (sb - sa), t = ta + u * (tb - ta);
        const double m = beta_mod(beta_at(s, t));
        if (std::fabs(m) <= tau) return SingularPoint{s, t, m, -1};
        (void)bb;
        return std::nullopt;
    };

    auto refine_minimum = [&](double s0, double t0) -> std::optional<SingularPoint> {
        // coordinate-wise golden-section descent of |beta mod 2pi|;
        // handles tent-shaped touching minima (isolated null points)
        double s = s0, t = t0;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        for (int round = 0; round < 4; ++round) {
            for (int axis = 0; axis < 2; ++axis) {
                double lo = (axis == 0 ? s : t) - lat.h;
                double hi = (axis == 0 ? s : t) + lat.h;
                auto val = [&](double u) {
                    return std::fabs(beta_mod(axis == 0 ? beta_at(u, t) : beta_at(s, u)));
                };
                double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
                double f1 = val(x1), f2 = val(x2);
                for (int it = 0; it < 90; ++it) {
                    if (f1 > f2) {
                        lo = x1; x1 = x2; f1 = f2;
                        x2 = lo + gr * (hi - lo); f2 = val(x2);
                    } else {
                        hi = x2; x2 = x1; f2 = f1;
                        x1 = hi - gr * (hi - lo); f1 = val(x1);
                    }
                }
                (axis == 0 ? s : t) = 0.5 * (lo + hi);
            }
        }
        const double m = beta_mod(beta_at(s, t));
        if (std::fabs(m) <= tau) return SingularPoint{s, t, m, -1};
        return std::nullopt;
    };

    std::vector<SingularPoint> refined;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            if (!flag[idx(i, j)]) continue;
            const int c = comp[idx(i, j)];
            auto& cm = out.components[c];
            const double s = lat.s_of(i), t = lat.t_of(j);
            cm.s_lo = std::min(cm.s_lo, s);
            cm.s_hi = std::max(cm.s_hi, s);
            cm.t_lo = std::min(cm.t_lo, t);
            cm.t_hi = std::max(cm.t_hi, t);
            ++cm.grid_count;
            out.grid_mask.emplace_back(s, t);

            const double b = lat.beta(i, j);
            const double m0 = beta_mod(b);

            // interior of a 2D singular region: accept directly, skip refinement
            if (std::fabs(m0) <= tau) {
                bool interior = true;
                for (int dj = -1; dj <= 1 && interior; ++dj)
                    for (int di = -1; di <= 1 && interior; ++di) {
                        const int i2 = i + di, j2 = j + dj;
                        if (i2 < 0 || i2 > n || j2 < 0 || j2 > n || !lat.inside(i2, j2))
                            continue;
                        if (std::fabs(beta_mod(lat.beta(i2, j2))) > tau) interior = false;
                    }
                if (interior) is_region[c] = 1;
                SingularPoint p{s, t, m0, c};
                refined.push_back(p);
                continue;
            }

            // edge crossings towards +s and +t only (avoids double work)
            bool found = false;
            const long q = band(b);
            const int di[2] = {1, 0};
            const int dj[2] = {0, 1};
            for (int e = 0; e < 2; ++e) {
                const int i2 = i + di[e], j2 = j + dj[e];
                if (i2 < 0 || i2 > n || j2 < 0 || j2 > n || !lat.inside(i2, j2)) continue;
                const double b2 = lat.beta(i2, j2);
                if (band(b2) == q && std::fabs(beta_mod(b2)) > tau) continue;
                auto p = refine_edge(s, t, lat.s_of(i2), lat.t_of(j2), b, b2);
                if (p) {
                    p->component = c;
                    refined.push_back(*p);
                    found = true;
                }
            }
            if (!found && std::fabs(m0) <= tau_flag) {
                auto p = refine_minimum(s, t);
                if (p) {
                    p->component = c;
                    refined.push_back(*p);
                }
            }
        }

    // deduplicate refined points on a half-cell lattice
    std::sort(refined.begin(), refined.end(), [&](const SingularPoint& a, const SingularPoint& b) {
        const double q = 0.5 * lat.h;
        const long as = std::lround(a.s / q), bs = std::lround(b.s / q);
        const long at = std::lround(a.t / q), bt = std::lround(b.t / q);
        if (as != bs) return as < bs;
        if (at != bt) return at < bt;
        return std::fabs(a.beta_mod) < std::fabs(b.beta_mod);
    });
    const double q = 0.5 * lat.h;
    for (size_t i = 0; i < refined.size(); ++i) {
        if (i > 0) {
            const auto& a = refined[i - 1];
            const auto& b = refined[i];
            if (std::lround(a.s / q) == std::lround(b.s / q) &&
                std::lround(a.t / q) == std::lround(b.t / q))
                continue;
        }
        out.points.push_back(refined[i]);
    }

    // classify components
    for (auto& cm : out.components) {
        if (is_region[cm.id]) {
            cm.cls = ComponentClass::region;
            continue;
        }
        double rs_lo = std::numeric_limits<double>::infinity(), rs_hi = -rs_lo;
        double rt_lo = rs_lo, rt_hi = -rs_lo;
        int count = 0;
        for (const auto& p : out.points)
            if (p.component == cm.id) {
                rs_lo = std::min(rs_lo, p.s);
                rs_hi = std::max(rs_hi, p.s);
                rt_lo = std::min(rt_lo, p.t);
                rt_hi = std::max(rt_hi, p.t);
                ++count;
            }
        if (count == 0 || (rs_hi - rs_lo <= 1.5 * lat.h && rt_hi - rt_lo <= 1.5 * lat.h))
            cm.cls = ComponentClass::isolated;
        else
            cm.cls = ComponentClass::segment;
    }

    // drop components that produced no verified point
    std::vector<char> has_point(n_comp, 0);
    for (const auto& p : out.points) has_point[p.component] = 1;
    std::vector<SingularComponent> kept;
    for (auto& cm : out.components)
        if (has_point[cm.id]) kept.push_back(cm);
    out.components = std::move(kept);
    return out;
}

SemicircleVerdict semicircle_criterion(const InitialData& data, double s1, double s2) {
    const int n = 4096;
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    double arg_mn = s1, arg_mx = s1;
    for (int i = 0; i <= n; ++i) {
        const double s = s1 + (s2 - s1) * i / n;
        const double th = data.theta(s);
        if (th < mn) { mn = th; arg_mn = s; }
        if (th > mx) { mx = th; arg_mx = s; }
    }
    const double osc = mx - mn;
    SemicircleVerdict v;
    v.oscillation = osc;
    v.guaranteed_singular = osc >= kPi - data.tol().angle;
    v.witness_a = std::min(arg_mn, arg_mx);
    v.witness_b = std::max(arg_mn, arg_mx);
    return v;
}

RegularityVerdict no_singularity_criterion(const InitialData& data, double s1, double s2) {
    const int n = 4096;
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    double vmax = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = s1 + (s2 - s1) * i / n;
        mn = std::min(mn, data.theta(s));
        mx = std::max(mx, data.theta(s));
        vmax = std::max(vmax, data.velocity(s).norm());
    }
    const double value = (mx - mn) * (mx - mn) + vmax * vmax;
    return {value < 1.0 - data.tol().sup, value};
}

double short_time_horizon(const InitialData& data) {
    const double lo = data.window_lo();
    const double hi = data.periodic() ? data.window_lo() + 2.0 * data.period()
                                      : data.window_hi();
    const int n = 16384;
    const double h = (hi - lo) / n;
    std::vector<double> th(n + 1);
    double vmax = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double s = lo + i * h;
        th[i] = data.theta(s);
        vmax = std::max(vmax, data.velocity(s).norm());
    }
    if (vmax >= 1.0 - data.tol().timelike)
        throw NotUniformlyTimelike("sup|v| too close to 1");
    const double eps = 1.0 - vmax * vmax;

    // oscillation of theta over every window of `len`, by monotone deques
    auto osc_window = [&](double len) {
        const int w = std::max(1, static_cast<int>(std::floor(len / h)));
        std::deque<int> qmax, qmin;
        double worst = 0.0;
        for (int i = 0; i <= n; ++i) {
            while (!qmax.empty() && th[qmax.back()] <= th[i]) qmax.pop_back();
            qmax.push_back(i);
            while (!qmin.empty() && th[qmin.back()] >= th[i]) qmin.pop_back();
            qmin.push_back(i);
            while (qmax.front() <= i - w - 1) qmax.pop_front();
            while (qmin.front() <= i - w - 1) qmin.pop_front();
            if (i >= w) worst = std::max(worst, th[qmax.front()] - th[qmin.front()]);
        }
        return worst;
    };

    const double total = osc_window(hi - lo);
    if (total * total < eps - data.tol().sup) {
        if (total == 0.0) return std::numeric_limits<double>::infinity();
        return 0.25 * (hi - lo); // oscillation never reaches the bound inside the window
    }
    double a = h, b = hi - lo;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        if (osc_window(mid) * osc_window(mid) < eps - data.tol().sup) a = mid; else b = mid;
    }
    return 0.25 * a;
}

Vec2 tangent_direction_e(const BetaField& beta, double s, double t) {
    const InitialData& d = beta.data();
    const double mean = 0.5 * (d.alpha_plus(s + t) + d.alpha_minus(s - t));
    return {-std::sin(mean), std::cos(mean)};
}

std::optional<Vec2> unit_tangent(const IsothermalSheet& sheet, const BetaField& beta,
                                 double s, double t) {
    const double b = beta.eval(s, t);
    const double sb = std::sin(0.5 * b);
    if (std::fabs(sb) <= sheet.data().tol().sing) return std::nullopt;
    const Vec2 e = tangent_direction_e(beta, s, t);
    return (sb > 0.0 ? 1.0 : -1.0) * e;
}

std::optional<SignChangeResult> find_tangent_sign_change_time(const InitialData& data,
                                                              double t_lo, double t_hi,
                                                              int t_steps, int s_steps) {
    BetaField beta(data);
    const double tau_z = 10.0 * data.tol().sing;

    auto scan = [&](double t, double& s_neg, double& s_pos) {
        double lo = data.window_lo(), hi = data.window_hi();
        if (!data.periodic()) {
            lo += std::fabs(t);
            hi -= std::fabs(t);
            if (!(hi > lo)) return false;
        }
        bool has_pos = false, has_neg = false;
        for (int i = 0; i <= s_steps; ++i) {
            const double s = lo + (hi - lo) * i / s_steps;
            const double g = std::sin(0.5 * beta.eval(s, t));
            if (g > tau_z && !has_pos) { has_pos = true; s_pos = s; }
            if (g < -tau_z && !has_neg) { has_neg = true; s_neg = s; }
            if (has_pos && has_neg) return true;
        }
        return false;
    };

    SignChangeResult res;
    bool found = false;
    double prev_t = t_lo;
    for (int j = 0; j <= t_steps; ++j) {
        const double t = t_lo + (t_hi - t_lo) * j / t_steps;
        double sn = 0, sp = 0;
        if (scan(t, sn, sp)) {
            res.candidates.push_back(t);
            if (!found) {
                found = true;
                res.s_negative = sn;
                res.s_positive = sp;
                // refine the first occurrence by bisection against the previous grid time
                double a = prev_t, b = t;
                if (j > 0) {
                    for (int it = 0; it < 50; ++it) {
                        const double mid = 0.5 * (a + b);
                        double xn, xp;
                        if (scan(mid, xn, xp)) b = mid; else a = mid;
                    }
                }
                res.t_star = b;
            }
        }
        prev_t = t;
    }
    if (!found) return std::nullopt;
    return res;
}

TangentClassification classify_tangent_discontinuity(const InitialData& data, double t0,
                                                     double s_lo, double s_hi) {
    BetaField beta(data);
    const double tau_z = 10.0 * data.tol().sing;
    const int n = std::max(2048, static_cast<int>(std::ceil((s_hi - s_lo) / 1e-3)));
    const double h = (s_hi - s_lo) / n;

    auto g_of = [&](double s) { return std::sin(0.5 * beta.eval(s, t0)); };

    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = g_of(s_lo + i * h);

    int i0 = 0;
    while (i0 <= n && std::fabs(g[i0]) <= tau_z) ++i0;
    if (i0 > n) throw NoSignChange("sin(beta/2) has no definite sign on the interval");
    const double sigma0 = g[i0] > 0.0 ? 1.0 : -1.0;

    int i_opp = i0 + 1;
    while (i_opp <= n && g[i_opp] * sigma0 > -tau_z) ++i_opp;
    if (i_opp > n) throw NoSignChange("sin(beta/2) does not change sign on the interval");

    int i_last = i_opp - 1;
    while (i_last > i0 && std::fabs(g[i_last]) <= tau_z) --i_last;

    // refine r1: entry into the zero set after the last same-sign sample
    auto bisect_pred = [&](double a, double b, auto pred) {
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (a + b);
            if (pred(mid)) b = mid; else a = mid;
        }
        return 0.5 * (a + b);
    };

    double r1, r2;
    if (i_opp == i_last + 1) {
        // transversal crossing within one cell
        const double root = bisect_pred(s_lo + i_last * h, s_lo + i_opp * h,
                                        [&](double s) { return g_of(s) * sigma0 <= 0.0; });
        r1 = r2 = root;
    } else {
        r1 = bisect_pred(s_lo + i_last * h, s_lo + (i_last + 1) * h,
                         [&](double s) { return std::fabs(g_of(s)) <= tau_z; });
        r2 = bisect_pred(s_lo + (i_opp - 1) * h, s_lo + i_opp * h,
                         [&](double s) { return g_of(s) * sigma0 <= -tau_z; });
    }

    TangentClassification out;
    out.r1 = r1;
    out.r2 = r2;
    out.delta = data.alpha_plus(r1 + t0) - data.alpha_plus(r2 + t0);

    const double ratio = out.delta / kPi;
    const long nearest = std::lround(ratio);
    const bool odd = (nearest % 2 != 0);
    if (odd && std::fabs(ratio - nearest) <= data.tol().angle && (r2 - r1) > 2.0 * h) {
        out.cls = TangentClass::c1_curve_with_tangent_extension;
        out.m = nearest;
        return out;
    }

    if (r2 - r1 <= 2.0 * h) {
        // single-point zero with strict sign change: sharpen the crossing by a
        // signed bisection, then decide by whether the two image branches
        // retrace each other (degenerate) or split (cusp pair)
        const double a = std::max(s_lo, r1 - h), b = std::min(s_hi, r2 + h);
        if (g_of(a) * sigma0 > 0.0 && g_of(b) * sigma0 < 0.0) {
            const double root = bisect_pred(
                a, b, [&](double s) { return g_of(s) * sigma0 <= 0.0; });
            out.r1 = out.r2 = r1 = r2 = root;
            out.delta = data.alpha_plus(r1 + t0) - data.alpha_plus(r2 + t0);
        }
        IsothermalSheet sheet{data};
        const double r = 0.5 * (r1 + r2);
        double worst_ratio = 0.0;
        for (double u : {2e-3, 4e-3, 8e-3}) {
            const Vec2 p = sheet.eval(r + u, t0);
            const Vec2 q = sheet.eval(r - u, t0);
            const Vec2 c = sheet.eval(r, t0);
            const double split = (p - q).norm();
            const double branch = std::max((p - c).norm(), (q - c).norm());
            if (branch > 0.0) worst_ratio = std::max(worst_ratio, split / branch);
        }
        out.cls = worst_ratio <= 1e-7 ? TangentClass::degenerate_no_extension
                                      : TangentClass::cusp_pair;
        return out;
    }

    out.cls = TangentClass::degenerate_no_extension;
    return out;
}

} // namespace maxsheet
