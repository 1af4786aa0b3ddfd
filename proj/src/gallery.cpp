#include "maxsheet/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "maxsheet/curvature.hpp"
#include "maxsheet/errors.hpp"
#include "maxsheet/quadrature.hpp"
#include "maxsheet/sheet.hpp"
#include "maxsheet/singularity.hpp"

namespace maxsheet {

namespace {

// --- piecewise closed-form curves -------------------------------------------

struct Piece {
    std::function<Vec2(double)> val, d1, d2;
    std::function<double(double)> angle;
};

class PiecewiseCurve final : public CurveProvider {
public:
    // edges.size() == pieces.size() + 1; edges may start/end at +-infinity.
    PiecewiseCurve(std::vector<double> edges, std::vector<Piece> pieces, Domain dom,
                   double turn = 0.0)
        : edges_(std::move(edges)), pieces_(std::move(pieces)), dom_(dom), turn_(turn) {
        // transcription guard: value, first derivative and lift must agree at joins
        for (size_t i = 1; i + 1 < edges_.size(); ++i) {
            const double e = edges_[i];
            const Vec2 dv = pieces_[i - 1].val(e) - pieces_[i].val(e);
            const Vec2 dd = pieces_[i - 1].d1(e) - pieces_[i].d1(e);
            const double da = pieces_[i - 1].angle(e) - pieces_[i].angle(e);
            if (dv.norm() > 1e-12 || dd.norm() > 1e-12 || std::fabs(da) > 1e-12)
                throw NotC1("piecewise curve joins are not C1 at s = " + std::to_string(e));
        }
        if (dom_.periodic) {
            const double lo = dom_.lo, hi = dom_.lo + dom_.period;
            const Vec2 dv = pieces_.back().val(hi) - (pieces_.front().val(lo) + dom_.period_shift);
            const Vec2 dd = pieces_.back().d1(hi) - pieces_.front().d1(lo);
            const double da = pieces_.back().angle(hi) - (pieces_.front().angle(lo) + turn_);
            if (dv.norm() > 1e-12 || dd.norm() > 1e-12 || std::fabs(da) > 1e-12)
                throw NotC1("piecewise curve period wrap is not C1");
        }
    }

    Domain domain() const override { return dom_; }
    CurveKind kind() const override { return CurveKind::analytic; }
    bool has_second_deriv() const override { return true; }

protected:
    const Piece& at(double s) const {
        auto it = std::upper_bound(edges_.begin(), edges_.end(), s);
        long k = (it - edges_.begin()) - 1;
        k = std::clamp<long>(k, 0, static_cast<long>(pieces_.size()) - 1);
        return pieces_[static_cast<size_t>(k)];
    }
    Vec2 eval_raw(double s) const override { return at(s).val(s); }
    Vec2 deriv_raw(double s) const override { return at(s).d1(s); }
    Vec2 second_deriv_raw(double s) const override { return at(s).d2(s); }
    std::optional<double> tangent_angle_raw(double s) const override { return at(s).angle(s); }
    double angle_turn_per_period() const override { return turn_; }

private:
    std::vector<double> edges_;
    std::vector<Piece> pieces_;
    Domain dom_;
    double turn_;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// --- cap profile: tangent angle sweeping -pi/2 -> pi/2 over [-L, L] ---------
// Semicircle (constant turning) when 2L = pi/2; otherwise a smooth tanh-rate
// profile whose rate is solved so the horizontal advance is exactly 1.

struct CapProfile {
    double L = kPi / 4.0;
    bool semicircle = true;
    double a = 0.0;

    double theta(double u) const {
        if (u <= -L) return -0.5 * kPi;
        if (u >= L) return 0.5 * kPi;
        if (semicircle) return 2.0 * u;
        return 0.5 * kPi * std::tanh(a * std::tan(0.5 * kPi * u / L));
    }
    double theta_dot(double u) const {
        if (u <= -L || u >= L) return 0.0;
        if (semicircle) return 2.0;
        const double w = 0.5 * kPi * u / L;
        const double tn = std::tan(w);
        const double sech = 1.0 / std::cosh(a * tn);
        const double cw = std::cos(w);
        return 0.5 * kPi * sech * sech * a * (0.5 * kPi / L) / (cw * cw);
    }
};

CapProfile make_cap(double L) {
    CapProfile cap;
    cap.L = L;
    if (std::fabs(L - kPi / 4.0) < 1e-12) {
        cap.semicircle = true;
        return cap;
    }
    if (L <= 0.5 + 1e-9)
        throw Error("cap of half-length L needs L > 1/2 to span unit width");
    cap.semicircle = false;
    auto advance = [&cap](double a) {
        cap.a = a;
        return integrate(std::function<double(double)>(
                             [&cap](double u) { return std::cos(cap.theta(u)); }),
                         -cap.L, cap.L, 1e-13);
    };
    double lo = 1e-3, hi = 1.0;
    while (advance(hi) > 1.0) hi *= 2.0;
    while (advance(lo) < 1.0) lo *= 0.5;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (advance(mid) > 1.0) lo = mid; else hi = mid;
    }
    cap.a = 0.5 * (lo + hi);
    return cap;
}

std::shared_ptr<TangentAngleCurve> make_cigar_curve(double L) {
    const CapProfile cap = make_cap(L);
    TangentAngleCurve::Profile p;
    p.theta = [cap](double u) { return cap.theta(u); };
    p.theta_dot = [cap](double u) { return cap.theta_dot(u); };
    return std::make_shared<TangentAngleCurve>(p, -L, L, Vec2{-0.5, 0.0}, -L,
                                               /*exact_tails=*/true);
}

// --- gallery entries ---------------------------------------------------------

InitialData direct_data(std::shared_ptr<const CurveProvider> c,
                        std::shared_ptr<const VelocityProvider> v,
                        double win = 20.0) {
    return InitialData(std::move(c), std::move(v), -win, win);
}

GalleryEntry make_plane() {
    auto c = std::make_shared<AnalyticCurve>(
        [](double s) { return Vec2{s, 0.0}; }, [](double) { return Vec2{1.0, 0.0}; },
        [](double) { return Vec2{0.0, 0.0}; }, Domain::all(),
        [](double) { return 0.0; });
    GalleryEntry e{"plane", direct_data(c, std::make_shared<ZeroVelocity>())};
    e.gamma_ref = [](double s, double) { return Vec2{s, 0.0}; };
    e.ksing_known_empty = true;
    e.kappa_abs_ref = [](double, double) { return 0.0; };
    return e;
}

GalleryEntry make_graph_sine() {
    auto c = std::make_shared<ArclengthGraphCurve>(
        [](double u) { return std::sin(u); }, [](double u) { return std::cos(u); },
        [](double u) { return -std::sin(u); }, -40.0, 40.0);
    // shift so s = 0 sits mid-window
    GalleryEntry e{"graph_sine",
                   InitialData(c, std::make_shared<ZeroVelocity>(),
                               c->domain().lo, c->domain().hi)};
    e.ksing_known_empty = true;
    const double mid = 0.5 * (c->domain().lo + c->domain().hi);
    e.scan_s1 = mid - 3.0;
    e.scan_s2 = mid + 3.0;
    return e;
}

GalleryEntry make_doubly_periodic() {
    auto c = std::make_shared<ArclengthGraphCurve>(
        [](double u) { return 0.3 * std::sin(kTwoPi * u); },
        [](double u) { return 0.3 * kTwoPi * std::cos(kTwoPi * u); },
        [](double u) { return -0.3 * kTwoPi * kTwoPi * std::sin(kTwoPi * u); }, 0.0, 1.0,
        /*periodic=*/true);
    GalleryEntry e{"doubly_periodic", direct_data(c, std::make_shared<ZeroVelocity>())};
    e.param_L = c->length();
    e.ksing_known_empty = true;
    e.scan_s1 = 0.0;
    e.scan_s2 = 2.0 * c->length();
    return e;
}

GalleryEntry make_grim_reaper() {
    // theta(s) = -pi/2 + pi tanh(g(s+1)), g(u) = b u^3 / (1 + c u^2); the cubic
    // start keeps the join with the straight tail C2, the asymptotically
    // linear rate keeps beta clear of 2 pi Z on finite diamonds while the
    // tangent arc closes a semicircle to ~1e-5.
    const double g_at_6 = 6.5;
    auto make_g = [g_at_6](double b) {
        const double c = (216.0 * b / g_at_6 - 1.0) / 36.0;
        return std::pair<double, double>(b, c);
    };
    auto advance = [&make_g](double b) {
        auto [bb, cc] = make_g(b);
        auto integrand = [bb, cc](double u) {
            const double g = bb * u * u * u / (1.0 + cc * u * u);
            return std::sin(kPi * std::tanh(g));
        };
        return integrate(std::function<double(double)>(integrand), 0.0, 41.0, 1e-12);
    };
    double lo = 6.5 / 216.0 * 1.02, hi = lo;
    while (advance(hi) > 1.0) hi *= 1.5;
    while (advance(lo) < 1.0) lo *= 1.02;
    for (int i = 0; i < 90; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (advance(mid) > 1.0) lo = mid; else hi = mid;
    }
    const auto [b, c] = make_g(0.5 * (lo + hi));

    TangentAngleCurve::Profile p;
    p.theta = [b, c](double s) {
        const double u = s + 1.0;
        if (u <= 0.0) return -0.5 * kPi;
        const double g = b * u * u * u / (1.0 + c * u * u);
        return -0.5 * kPi + kPi * std::tanh(g);
    };
    p.theta_dot = [b, c](double s) {
        const double u = s + 1.0;
        if (u <= 0.0) return 0.0;
        const double q = 1.0 + c * u * u;
        const double g = b * u * u * u / q;
        const double gp = b * (3.0 * u * u + c * u * u * u * u) / (q * q);
        const double sech = 1.0 / std::cosh(g);
        return kPi * sech * sech * gp;
    };
    auto curve = std::make_shared<TangentAngleCurve>(p, -40.0, 40.0, Vec2{0.0, 1.0}, -1.0,
                                                     /*exact_tails=*/false);
    GalleryEntry e{"grim_reaper", direct_data(curve, std::make_shared<ZeroVelocity>(), 40.0)};
    e.ksing_known_empty = true;
    e.scan_s1 = -5.0;
    e.scan_s2 = 5.0;
    return e;
}

GalleryEntry make_shrinking_circle() {
    auto c = std::make_shared<AnalyticCurve>(
        [](double s) { return Vec2{std::cos(s), std::sin(s)}; },
        [](double s) { return Vec2{-std::sin(s), std::cos(s)}; },
        [](double s) { return Vec2{-std::cos(s), -std::sin(s)}; },
        Domain::periodic_domain(kTwoPi), [](double s) { return s + 0.5 * kPi; }, kTwoPi);
    GalleryEntry e{"shrinking_circle", direct_data(c, std::make_shared<ZeroVelocity>())};
    e.gamma_ref = [](double s, double t) {
        return Vec2{std::cos(t) * std::cos(s), std::cos(t) * std::sin(s)};
    };
    e.ksing_member = [](double, double t) {
        return std::fabs(std::cos(t)) <= 1e-6;
    };
    e.kappa_abs_ref = [](double, double t) { return 1.0 / std::fabs(std::cos(t)); };
    e.first_singular_time = 0.5 * kPi;
    e.scan_s1 = 0.0;
    e.scan_s2 = kTwoPi;
    return e;
}

GalleryEntry make_cigar(double L) {
    if (L <= 0.0) L = kPi / 4.0;
    auto curve = make_cigar_curve(L);
    GalleryEntry e{"cigar", direct_data(curve, std::make_shared<ZeroVelocity>()), L};
    e.ksing_member = [L](double s, double t) {
        return (t >= L - 1e-9 && std::fabs(s) <= t - L + 1e-9) ||
               (t <= -L + 1e-9 && std::fabs(s) <= -t - L + 1e-9);
    };
    e.first_singular_time = L;
    e.scan_s1 = -2.0;
    e.scan_s2 = 2.0;
    return e;
}

GalleryEntry make_periodic_wedge(double L) {
    if (L <= 0.0) L = kPi;
    const double Lc = L / 4.0;
    const CapProfile cap = make_cap(Lc);
    std::shared_ptr<TangentAngleCurve> capcurve;
    if (!cap.semicircle) {
        TangentAngleCurve::Profile p;
        p.theta = [cap](double u) { return cap.theta(u); };
        p.theta_dot = [cap](double u) { return cap.theta_dot(u); };
        capcurve = std::make_shared<TangentAngleCurve>(p, -Lc, Lc, Vec2{-0.5, 0.0}, -Lc, true);
    }
    auto cap_val = [cap, capcurve](double u) -> Vec2 {
        if (cap.semicircle) return {0.5 * std::sin(2.0 * u), -0.5 * std::cos(2.0 * u)};
        return capcurve->eval(u);
    };
    auto cap_angle = [cap](double u) { return cap.theta(u); };
    auto cap_rate = [cap](double u) { return cap.theta_dot(u); };

    // piece 1: mirrored cap scaled by 2, sweeping (-1,0) -> (1,0), theta pi/2 -> -pi/2
    Piece p1;
    p1.val = [cap_val, L](double s) {
        const Vec2 f = cap_val(0.5 * (s - 0.5 * L));
        return Vec2{2.0 * f.x, -2.0 * f.y};
    };
    p1.angle = [cap_angle, L](double s) { return -cap_angle(0.5 * (s - 0.5 * L)); };
    p1.d1 = [cap_angle, L](double s) {
        const double th = cap_angle(0.5 * (s - 0.5 * L));
        return Vec2{std::cos(th), -std::sin(th)};
    };
    p1.d2 = [cap_angle, cap_rate, L](double s) {
        const double u = 0.5 * (s - 0.5 * L);
        const double th = cap_angle(u), rate = cap_rate(u);
        return 0.5 * rate * Vec2{-std::sin(th), -std::cos(th)};
    };
    // piece 2: shifted mirror image, theta -pi/2 -> pi/2
    Piece p2;
    p2.val = [cap_val, L](double s) {
        const Vec2 f = cap_val(0.5 * (s - 1.5 * L));
        return Vec2{2.0 + 2.0 * f.x, 2.0 * f.y};
    };
    p2.angle = [cap_angle, L](double s) { return cap_angle(0.5 * (s - 1.5 * L)); };
    p2.d1 = [cap_angle, L](double s) {
        const double th = cap_angle(0.5 * (s - 1.5 * L));
        return Vec2{std::cos(th), std::sin(th)};
    };
    p2.d2 = [cap_angle, cap_rate, L](double s) {
        const double u = 0.5 * (s - 1.5 * L);
        const double th = cap_angle(u), rate = cap_rate(u);
        return 0.5 * rate * Vec2{-std::sin(th), std::cos(th)};
    };

    Domain dom = Domain::periodic_domain(2.0 * L, Vec2{4.0, 0.0});
    auto curve = std::make_shared<PiecewiseCurve>(std::vector<double>{0.0, L, 2.0 * L},
                                                  std::vector<Piece>{p1, p2}, dom, 0.0);
    GalleryEntry e{"periodic_wedge", direct_data(curve, std::make_shared<ZeroVelocity>()), L};
    e.ksing_member = [L](double s, double t) {
        const double ms = std::fabs(std::remainder(s, L)) - 0.5 * L;
        const double mt = std::fabs(std::remainder(t, L)) - 0.5 * L;
        return std::fabs(ms) <= 1e-6 && std::fabs(mt) <= 1e-6;
    };
    e.first_singular_time = 0.5 * L;
    e.scan_s1 = 0.0;
    e.scan_s2 = 2.0 * L;
    return e;
}

GalleryEntry make_cusp_reversal() {
    Piece p1{[](double s) { return Vec2{s, -1.0}; },
             [](double) { return Vec2{1.0, 0.0}; },
             [](double) { return Vec2{0.0, 0.0}; },
             [](double) { return 0.0; }};
    Piece p2{[](double s) { return Vec2{std::sin(s), -std::cos(s)}; },
             [](double s) { return Vec2{std::cos(s), std::sin(s)}; },
             [](double s) { return Vec2{-std::sin(s), std::cos(s)}; },
             [](double s) { return s; }};
    Piece p3{[](double s) { return Vec2{0.5 * std::sin(2 * s), -0.5 * (1.0 + std::cos(2 * s))}; },
             [](double s) { return Vec2{std::cos(2 * s), std::sin(2 * s)}; },
             [](double s) { return Vec2{-2.0 * std::sin(2 * s), 2.0 * std::cos(2 * s)}; },
             [](double s) { return 2.0 * s - kTwoPi; }};
    Piece p4{[](double s) { return Vec2{0.5, -0.5 + s - 2.25 * kPi}; },
             [](double) { return Vec2{0.0, 1.0}; },
             [](double) { return Vec2{0.0, 0.0}; },
             [](double) { return 2.5 * kPi; }};
    auto curve = std::make_shared<PiecewiseCurve>(
        std::vector<double>{-kInf, 0.0, kTwoPi, 2.25 * kPi, kInf},
        std::vector<Piece>{p1, p2, p3, p4}, Domain::all());
    GalleryEntry e{"cusp_reversal", direct_data(curve, std::make_shared<ZeroVelocity>())};
    e.scan_s1 = -1.0;
    e.scan_s2 = 2.0 * kTwoPi;
    return e;
}

GalleryEntry make_sheeting() {
    const double P = kPi;
    Piece p1{[](double s) { return Vec2{-s, -1.0}; },
             [](double) { return Vec2{-1.0, 0.0}; },
             [](double) { return Vec2{0.0, 0.0}; },
             [P](double) { return P; }};
    Piece p2{[](double s) { return Vec2{-std::sin(s), -std::cos(s)}; },
             [](double s) { return Vec2{-std::cos(s), std::sin(s)}; },
             [](double s) { return Vec2{std::sin(s), std::cos(s)}; },
             [P](double s) { return P - s; }};
    Piece p3{[P](double s) { return Vec2{-2.0 + std::cos(s - 0.5 * P), std::sin(s - 0.5 * P)}; },
             [P](double s) { return Vec2{-std::sin(s - 0.5 * P), std::cos(s - 0.5 * P)}; },
             [P](double s) { return Vec2{-std::cos(s - 0.5 * P), -std::sin(s - 0.5 * P)}; },
             [](double s) { return s; }};
    Piece p4{[P](double s) { return Vec2{-2.0 - std::sin(s - P), 2.0 - std::cos(s - P)}; },
             [P](double s) { return Vec2{-std::cos(s - P), std::sin(s - P)}; },
             [P](double s) { return Vec2{std::sin(s - P), std::cos(s - P)}; },
             [P](double s) { return 2.0 * P - s; }};
    Piece p5{[P](double s) {
                 return Vec2{-2.0 + 2.0 * std::sin(0.5 * (s - 2 * P)),
                             1.0 + 2.0 * std::cos(0.5 * (s - 2 * P))};
             },
             [P](double s) {
                 return Vec2{std::cos(0.5 * (s - 2 * P)), -std::sin(0.5 * (s - 2 * P))};
             },
             [P](double s) {
                 return Vec2{-0.5 * std::sin(0.5 * (s - 2 * P)),
                             -0.5 * std::cos(0.5 * (s - 2 * P))};
             },
             [P](double s) { return -0.5 * (s - 2.0 * P); }};
    Piece p6{[P](double s) { return Vec2{1.0 - std::cos(s - 3 * P), 1.0 - std::sin(s - 3 * P)}; },
             [P](double s) { return Vec2{std::sin(s - 3 * P), -std::cos(s - 3 * P)}; },
             [P](double s) { return Vec2{std::cos(s - 3 * P), std::sin(s - 3 * P)}; },
             [P](double s) { return s - 3.0 * P - 0.5 * P; }};
    Piece p7{[P](double s) {
                 return Vec2{1.0 + std::sin(s - 3.5 * P), -1.0 + std::cos(s - 3.5 * P)};
             },
             [P](double s) { return Vec2{std::cos(s - 3.5 * P), -std::sin(s - 3.5 * P)}; },
             [P](double s) { return Vec2{-std::sin(s - 3.5 * P), -std::cos(s - 3.5 * P)}; },
             [P](double s) { return 3.5 * P - s; }};
    Piece p8{[P](double s) { return Vec2{2.0, -1.0 - (s - 4 * P)}; },
             [](double) { return Vec2{0.0, -1.0}; },
             [](double) { return Vec2{0.0, 0.0}; },
             [P](double) { return -0.5 * P; }};
    auto curve = std::make_shared<PiecewiseCurve>(
        std::vector<double>{-kInf, 0.0, 0.5 * P, P, 2 * P, 3 * P, 3.5 * P, 4 * P, kInf},
        std::vector<Piece>{p1, p2, p3, p4, p5, p6, p7, p8}, Domain::all());
    GalleryEntry e{"sheeting", direct_data(curve, std::make_shared<ZeroVelocity>())};
    e.scan_s1 = 0.0;
    e.scan_s2 = 4.0 * kPi;
    return e;
}

GalleryEntry make_figure_eight() {
    auto raw = std::make_shared<AnalyticCurve>(
        [](double s) { return Vec2{std::sin(s), std::sin(s) * std::cos(s)}; },
        [](double s) { return Vec2{std::cos(s), std::cos(2.0 * s)}; },
        [](double s) { return Vec2{-std::sin(s), -2.0 * std::sin(2.0 * s)}; },
        Domain::periodic_domain(kTwoPi));
    InitialData data =
        normalize_initial_data(raw, std::make_shared<ZeroVelocity>(), NormalizeOptions{});
    const double P = data.period();
    GalleryEntry e{"figure_eight", std::move(data)};
    e.param_L = P;
    e.scan_s1 = 0.0;
    e.scan_s2 = P;
    return e;
}

} // namespace

std::vector<std::string> gallery_names() {
    return {"plane",     "graph_sine",     "doubly_periodic", "grim_reaper",
            "shrinking_circle", "cigar",   "periodic_wedge",  "cusp_reversal",
            "sheeting",  "figure_eight"};
}

GalleryEntry build_gallery(const std::string& name, double L) {
    if (name == "plane") return make_plane();
    if (name == "graph_sine") return make_graph_sine();
    if (name == "doubly_periodic") return make_doubly_periodic();
    if (name == "grim_reaper") return make_grim_reaper();
    if (name == "shrinking_circle") return make_shrinking_circle();
    if (name == "cigar") return make_cigar(L);
    if (name == "periodic_wedge") return make_periodic_wedge(L);
    if (name == "cusp_reversal") return make_cusp_reversal();
    if (name == "sheeting") return make_sheeting();
    if (name == "figure_eight") return make_figure_eight();
    throw UnknownName("unknown gallery entry: " + name);
}

RegressionReport run_regression(const GalleryEntry& entry) {
    RegressionReport rep;
    rep.entry = entry.name;
    const IsothermalSheet sheet(entry.data);
    const double s_lo = entry.scan_s1, s_hi = entry.scan_s2;
    const double t_max = entry.data.periodic()
                             ? 0.45 * (s_hi - s_lo)
                             : std::min(0.45 * (s_hi - s_lo),
                                        0.45 * (entry.data.window_hi() - s_hi));

    auto add = [&rep](const std::string& name, double dev, double tol) {
        rep.checks.push_back({name, dev, tol, dev <= tol});
        rep.max_deviation = std::max(rep.max_deviation, dev);
        rep.pass = rep.pass && dev <= tol;
    };

    // gauge invariants and reference surface on quasi-random points
    double orth = 0.0, speed = 0.0, gdev = 0.0, wave = 0.0, proper = 0.0, sym = 0.0,
           fd = 0.0;
    const bool v_zero = entry.data.velocity_provider().is_zero();
    for (int i = 0; i < 10000; ++i) {
        const Vec2 u = quasi_random_01(i);
        const double s = s_lo + (s_hi - s_lo) * u.x;
        const double t = -t_max + 2.0 * t_max * u.y;
        const Vec2 gs = sheet.ds(s, t);
        const Vec2 gt = sheet.dt(s, t);
        orth = std::max(orth, std::fabs(dot(gs, gt)));
        speed = std::max(speed, std::fabs(gs.norm2() + gt.norm2() - 1.0));
        const Vec2 g = sheet.eval(s, t);
        if (entry.gamma_ref) gdev = std::max(gdev, (g - entry.gamma_ref(s, t)).norm());
        proper = std::max(proper,
                          entry.data.curve(s).norm() - std::fabs(t) - g.norm());
        if (v_zero) sym = std::max(sym, (g - sheet.eval(s, -t)).norm());
        if (i % 100 == 0) {
            const double h = 1e-2;
            const Vec2 wres = sheet.eval(s, t + h) + sheet.eval(s, t - h) -
                              sheet.eval(s + h, t) - sheet.eval(s - h, t);
            wave = std::max(wave, wres.norm() / (h * h));
            const double hd = 1e-4;
            const Vec2 fds = (sheet.eval(s + hd, t) - sheet.eval(s - hd, t)) / (2 * hd);
            const Vec2 fdt = (sheet.eval(s, t + hd) - sheet.eval(s, t - hd)) / (2 * hd);
            fd = std::max(fd, (fds - gs).norm());
            fd = std::max(fd, (fdt - gt).norm());
        }
    }
    add("gauge_orthogonality", orth, 1e-9);
    add("gauge_speed", speed, 1e-9);
    if (entry.gamma_ref) add("gamma_reference", gdev, 1e-10);
    add("wave_equation_fd", wave, 1e-9);
    add("properness_bound", proper, 1e-9);
    if (v_zero) add("time_symmetry", sym, 1e-12);
    add("derivative_vs_fd", fd, 1e-6);

    if (entry.kappa_abs_ref) {
        double kdev = 0.0;
        const SheetView view = sheet.view();
        for (int i = 0; i < 500; ++i) {
            const Vec2 u = quasi_random_01(i);
            const double s = s_lo + (s_hi - s_lo) * u.x;
            const double t = -1.4 + 2.8 * u.y;
            const auto k = cross_section_curvature(view, s, t);
            if (!k.kappa_std) continue;
            kdev = std::max(kdev,
                            std::fabs(std::fabs(*k.kappa_std) - entry.kappa_abs_ref(s, t)));
        }
        add("kappa_reference", kdev, 1e-8);
    }

    if (entry.ksing_member || entry.ksing_known_empty) {
        const SingularSet set =
            find_singular_set(entry.data, {s_lo, s_hi}, (s_hi - s_lo) / 600.0);
        if (entry.ksing_known_empty) {
            add("ksing_empty", static_cast<double>(set.points.size()), 0.0);
        } else {
            double worst = set.points.empty() ? 1.0 : 0.0;
            for (const auto& p : set.points)
                if (!entry.ksing_member(p.s, p.t)) worst = 1.0;
            add("ksing_membership", worst, 0.0);
            if (std::isfinite(entry.first_singular_time)) {
                double tmin = std::numeric_limits<double>::infinity();
                for (const auto& p : set.points) tmin = std::min(tmin, std::fabs(p.t));
                add("first_singular_time",
                    std::fabs(tmin - entry.first_singular_time), 2.0 * set.grid_step);
            }
        }
    }
    return rep;
}

InitialData random_smooth_data(unsigned seed, double window) {
    // deterministic, portable: splitmix64 bits -> doubles in [0,1)
    auto next = [state = static_cast<unsigned long long>(seed) * 0x9E3779B97F4A7C15ull +
                         0xD1B54A32D192ED03ull]() mutable {
        state += 0x9E3779B97F4A7C15ull;
        unsigned long long z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
    };

    const double amp = 0.25 + 2.0 * next();
    const double omega0 = 0.4 + 0.8 * next();
    double cth[4], phth[4];
    for (int j = 0; j < 4; ++j) {
        cth[j] = amp * (0.3 + next()) / (j + 1.0);
        phth[j] = kTwoPi * next();
    }
    const double m0 = 0.75 * next();
    const double omega1 = 0.5 + 0.9 * next();
    const double phmu = kTwoPi * next();

    auto theta = [=](double s) {
        double v = 0.0;
        for (int j = 0; j < 4; ++j) v += cth[j] * std::cos((j + 1) * omega0 * s + phth[j]);
        return v;
    };
    auto theta_dot = [=](double s) {
        double v = 0.0;
        for (int j = 0; j < 4; ++j)
            v -= cth[j] * (j + 1) * omega0 * std::sin((j + 1) * omega0 * s + phth[j]);
        return v;
    };
    auto mu = [=](double s) { return m0 * std::sin(omega1 * s + phmu); };
    auto mu_dot = [=](double s) { return m0 * omega1 * std::cos(omega1 * s + phmu); };

    TangentAngleCurve::Profile p;
    p.theta = theta;
    p.theta_dot = theta_dot;
    p.speed = [mu](double s) {
        const double m = mu(s);
        return std::sqrt(1.0 - m * m);
    };
    p.speed_dot = [mu, mu_dot](double s) {
        const double m = mu(s);
        return -m * mu_dot(s) / std::sqrt(1.0 - m * m);
    };
    auto curve = std::make_shared<TangentAngleCurve>(p, -window, window, Vec2{0.0, 0.0}, 0.0,
                                                     /*exact_tails=*/false);
    auto velocity = std::make_shared<NormalVelocity>(curve, mu, mu_dot);
    return InitialData(curve, velocity, -window, window);
}

} // namespace maxsheet
