#include "maxsheet/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "maxsheet/errors.hpp"

namespace maxsheet {

SeparationResult separating_direction(const InitialData& data, double s1, double s2) {
    const int n = 4096;
    std::vector<double> ap(n + 1), am(n + 1);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i <= n; ++i) {
        const double s = s1 + (s2 - s1) * i / n;
        ap[i] = data.alpha_plus(s);
        am[i] = data.alpha_minus(s);
        lo = std::min(lo, ap[i]);
        hi = std::max(hi, ap[i]);
    }

    SeparationResult res;
    res.arc_lo = lo;
    res.arc_hi = hi;
    const double mid = 0.5 * (lo + hi);
    res.omega_angle = mid;
    res.omega = unit_dir(mid);

    // <a+(xi) - a-(eta), omega> splits into two 1D scans
    double min_plus = std::numeric_limits<double>::infinity();
    double max_minus = -min_plus;
    for (int i = 0; i <= n; ++i) {
        min_plus = std::min(min_plus, std::cos(ap[i] - mid));
        max_minus = std::max(max_minus, std::cos(am[i] - mid));
    }
    res.margin = min_plus - max_minus;
    if (hi - lo < kTwoPi && res.margin > data.tol().gauge) {
        res.verdict = SeparationVerdict::separated;
        return res;
    }

    // overlap witness: minimize the angular gap alpha+(xi) - alpha-(eta) mod 2pi
    res.verdict = SeparationVerdict::overlapping;
    double best = std::numeric_limits<double>::infinity();
    int bi = 0, bj = 0;
    const int m = 512;
    std::vector<double> apc(m + 1), amc(m + 1);
    for (int i = 0; i <= m; ++i) {
        const double s = s1 + (s2 - s1) * i / m;
        apc[i] = data.alpha_plus(s);
        amc[i] = data.alpha_minus(s);
    }
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) {
            const double gap = std::fabs(mod_two_pi_centered(apc[i] - amc[j]));
            if (gap < best) {
                best = gap;
                bi = i;
                bj = j;
            }
        }
    double xi = s1 + (s2 - s1) * bi / m;
    double eta = s1 + (s2 - s1) * bj / m;
    // coordinate-wise golden-section refinement
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    const double rad = (s2 - s1) / m;
    for (int round = 0; round < 3; ++round)
        for (int axis = 0; axis < 2; ++axis) {
            double a = std::max(s1, (axis == 0 ? xi : eta) - rad);
            double b = std::min(s2, (axis == 0 ? xi : eta) + rad);
            auto val = [&](double u) {
                const double p = axis == 0 ? data.alpha_plus(u) : data.alpha_plus(xi);
                const double q = axis == 0 ? data.alpha_minus(eta) : data.alpha_minus(u);
                return std::fabs(mod_two_pi_centered(p - q));
            };
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = val(x1), f2 = val(x2);
            for (int it = 0; it < 70; ++it) {
                if (f1 > f2) {
                    a = x1; x1 = x2; f1 = f2;
                    x2 = a + gr * (b - a); f2 = val(x2);
                } else {
                    b = x2; x2 = x1; f2 = f1;
                    x1 = b - gr * (b - a); f1 = val(x1);
                }
            }
            (axis == 0 ? xi : eta) = 0.5 * (a + b);
        }
    res.witness_xi = xi;
    res.witness_eta = eta;
    res.witness_gap = (data.a_plus(xi) - data.a_minus(eta)).norm();
    return res;
}

GraphVerdict verify_graph_on_diamond(const IsothermalSheet& sheet,
                                     const CharacteristicDiamond& diamond, Vec2 omega,
                                     int n) {
    GraphVerdict v{true, std::numeric_limits<double>::infinity(), 0.0, 0.0};
    const double T = diamond.half_width();
    for (int j = 0; j <= n; ++j) {
        const double t = -T + 2.0 * T * j / n;
        const double s_lo = diamond.s1 + std::fabs(t);
        const double s_hi = diamond.s2 - std::fabs(t);
        if (!(s_hi >= s_lo)) continue;
        double prev_height = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i) {
            const double s = s_lo + (s_hi - s_lo) * i / n;
            const double g = dot(sheet.ds(s, t), omega);
            if (g < v.margin) {
                v.margin = g;
                v.min_s = s;
                v.min_t = t;
            }
            if (g <= 0.0)
                throw MarginViolated("<gamma_s, omega> <= 0 at s=" + std::to_string(s) +
                                     ", t=" + std::to_string(t));
            const double height = dot(sheet.eval(s, t), omega);
            if (height <= prev_height)
                throw MarginViolated("slice height not strictly monotone at s=" +
                                     std::to_string(s) + ", t=" + std::to_string(t));
            prev_height = height;
        }
    }
    return v;
}

namespace {

struct SegRecord {
    int index;
    Vec2 a, b;
};

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
    auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) {
        return cross(b - a, c - a);
    };
    const double o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    const double o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

} // namespace

std::vector<Intersection> detect_self_intersections(const CurveProvider& curve,
                                                    double s_lo, double s_hi, int samples,
                                                    double tau) {
    const double h = (s_hi - s_lo) / samples;
    std::vector<Vec2> pts(samples + 1);
    for (int i = 0; i <= samples; ++i) pts[i] = curve.eval(s_lo + i * h);

    // broad phase: spatial hash of segment bounding boxes
    double seg_scale = 0.0;
    for (int i = 0; i < samples; ++i) seg_scale = std::max(seg_scale, (pts[i + 1] - pts[i]).norm());
    const double cell = std::max(seg_scale * 2.0, 1e-12);
    auto key = [cell](int cx, int cy) {
        return (static_cast<long long>(cx) << 32) ^ (static_cast<unsigned>(cy));
    };
    std::unordered_map<long long, std::vector<int>> grid;
    for (int i = 0; i < samples; ++i) {
        const Vec2 a = pts[i], b = pts[i + 1];
        const int cx0 = static_cast<int>(std::floor(std::min(a.x, b.x) / cell));
        const int cx1 = static_cast<int>(std::floor(std::max(a.x, b.x) / cell));
        const int cy0 = static_cast<int>(std::floor(std::min(a.y, b.y) / cell));
        const int cy1 = static_cast<int>(std::floor(std::max(a.y, b.y) / cell));
        for (int cx = cx0; cx <= cx1; ++cx)
            for (int cy = cy0; cy <= cy1; ++cy) grid[key(cx, cy)].push_back(i);
    }

    const Domain dom = curve.domain();
    const double period = dom.periodic ? dom.period : 0.0;
    const bool closed = dom.periodic && dom.period_shift.norm() == 0.0;

    std::vector<Intersection> found;
    auto try_pair = [&](int i, int j) {
        if (j - i <= 1) return; // adjacent segments share a vertex
        if (!segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1])) return;
        double r1 = s_lo + (i + 0.5) * h;
        double r2 = s_lo + (j + 0.5) * h;
        // Newton on c(r1) - c(r2) = 0
        for (int it = 0; it < 60; ++it) {
            const Vec2 f = curve.eval(r1) - curve.eval(r2);
            if (f.norm() < tau) break;
            const Vec2 d1 = curve.deriv(r1);
            const Vec2 d2 = curve.deriv(r2);
            const double det = -cross(d1, d2);
            if (std::fabs(det) < 1e-14) return; // tangential contact, skip
            // solve [d1, -d2] [dr1, dr2]^T = -f
            const double dr1 = (-f.x * (-d2.y) - (-d2.x) * (-f.y)) / det;
            const double dr2 = (d1.x * (-f.y) - (-f.x) * d1.y) / det;
            r1 += dr1;
            r2 += dr2;
        }
        if ((curve.eval(r1) - curve.eval(r2)).norm() > 1e3 * tau) return;
        if (r2 < r1) std::swap(r1, r2);
        if (r2 - r1 < 4.0 * h) return; // trivial self-match
        if (closed && std::fabs((r2 - r1) - period * std::round((r2 - r1) / period)) < 4.0 * h)
            return; // periodic duplicate
        // deduplicate against previous finds (canonical modulo period)
        for (const auto& ex : found) {
            double d1 = std::fabs(ex.r1 - r1), d2 = std::fabs(ex.r2 - r2);
            if (closed) {
                d1 = std::min(d1, std::fabs(period - d1));
                d2 = std::min(d2, std::fabs(period - d2));
            }
            if (d1 < 4.0 * h && d2 < 4.0 * h) return;
            if (closed) {
                // same unordered pair shifted by a period
                double e1 = std::fabs(ex.r1 - (r2 - period));
                double e2 = std::fabs(ex.r2 - (r1 + period));
                if (e1 < 4.0 * h || e2 < 4.0 * h) return;
            }
        }
        found.push_back({r1, r2, curve.eval(r1)});
    };

    for (const auto& [k, segs] : grid) {
        (void)k;
        for (size_t a = 0; a < segs.size(); ++a)
            for (size_t b = a + 1; b < segs.size(); ++b)
                try_pair(std::min(segs[a], segs[b]), std::max(segs[a], segs[b]));
    }
    std::sort(found.begin(), found.end(), [](const Intersection& a, const Intersection& b) {
        return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
    });
    return found;
}

} // namespace maxsheet
