#include "maxsheet/curve.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "maxsheet/errors.hpp"

namespace maxsheet {

namespace {

// Richardson-extrapolated central difference of a vector function.
Vec2 fd_deriv(const std::function<Vec2(double)>& g, double s, double h = 1e-3) {
    const Vec2 d1 = (g(s + h) - g(s - h)) / (2.0 * h);
    const Vec2 d2 = (g(s + 0.5 * h) - g(s - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

double CurveProvider::reduce(double s, long& winding) const {
    const Domain d = domain();
    winding = 0;
    if (!d.periodic) {
        if (!d.contains(s)) throw DomainExceeded("curve parameter outside domain");
        return s;
    }
    const double n = std::floor((s - d.lo) / d.period);
    winding = static_cast<long>(n);
    double base = s - n * d.period;
    if (base >= d.lo + d.period) { base -= d.period; ++winding; }
    return base;
}

Vec2 CurveProvider::eval(double s) const {
    long w;
    const double base = reduce(s, w);
    Vec2 v = eval_raw(base);
    if (w != 0) v += static_cast<double>(w) * domain().period_shift;
    return v;
}

Vec2 CurveProvider::deriv(double s) const {
    long w;
    return deriv_raw(reduce(s, w));
}

Vec2 CurveProvider::second_deriv(double s) const {
    long w;
    return second_deriv_raw(reduce(s, w));
}

std::optional<double> CurveProvider::tangent_angle(double s) const {
    long w;
    const double base = reduce(s, w);
    auto a = tangent_angle_raw(base);
    if (!a) return std::nullopt;
    return *a + static_cast<double>(w) * angle_turn_per_period();
}

Vec2 CurveProvider::second_deriv_raw(double s) const {
    return fd_deriv([this](double u) { return deriv_raw(u); }, s);
}

Vec2 VelocityProvider::deriv(double s) const {
    return fd_deriv([this](double u) { return eval(u); }, s);
}

// --- AnalyticCurve ---------------------------------------------------------

AnalyticCurve::AnalyticCurve(Fn eval, Fn deriv, Domain dom)
    : eval_(std::move(eval)), deriv_(std::move(deriv)), dom_(dom) {}

AnalyticCurve::AnalyticCurve(Fn eval, Fn deriv, Fn dderiv, Domain dom, AngleFn angle, double turn)
    : eval_(std::move(eval)), deriv_(std::move(deriv)), dderiv_(std::move(dderiv)),
      angle_(std::move(angle)), dom_(dom), turn_(turn) {}

Vec2 AnalyticCurve::second_deriv_raw(double s) const {
    if (dderiv_) return dderiv_(s);
    return CurveProvider::second_deriv_raw(s);
}

std::optional<double> AnalyticCurve::tangent_angle_raw(double s) const {
    if (angle_) return angle_(s);
    return std::nullopt;
}

// --- TangentAngleCurve -----------------------------------------------------

TangentAngleCurve::TangentAngleCurve(Profile p, double core_lo, double core_hi,
                                     Vec2 anchor_value, double anchor_s, bool exact_tails,
                                     int knots)
    : profile_(std::move(p)), core_lo_(core_lo), core_hi_(core_hi), exact_tails_(exact_tails) {
    auto integrand = [this](double u) {
        const double sp = speed(u);
        return Vec2{sp * std::cos(profile_.theta(u)), sp * std::sin(profile_.theta(u))};
    };
    pos_ = CumulativeIntegral(integrand, core_lo_, core_hi_, anchor_s, knots);
    // shift so that c(anchor_s) = anchor_value
    const Vec2 off = anchor_value;
    core_lo_val_ = pos_.eval(core_lo_) + off;
    core_hi_val_ = pos_.eval(core_hi_) + off;
    anchor_off_ = off;
    dom_ = exact_tails_ ? Domain::all() : Domain::interval(core_lo_, core_hi_);
}

Vec2 TangentAngleCurve::eval_raw(double s) const {
    if (s < core_lo_) return core_lo_val_ + (s - core_lo_) * deriv_raw(core_lo_);
    if (s > core_hi_) return core_hi_val_ + (s - core_hi_) * deriv_raw(core_hi_);
    return pos_.eval(s) + anchor_off_;
}

Vec2 TangentAngleCurve::deriv_raw(double s) const {
    const double sc = std::clamp(s, core_lo_, core_hi_);
    const double sp = speed(sc);
    const double th = profile_.theta(sc);
    return {sp * std::cos(th), sp * std::sin(th)};
}

Vec2 TangentAngleCurve::second_deriv_raw(double s) const {
    if (s < core_lo_ || s > core_hi_) return {0.0, 0.0};
    const double sp = speed(s), spd = speed_dot(s);
    const double th = profile_.theta(s), thd = profile_.theta_dot(s);
    const Vec2 u{std::cos(th), std::sin(th)};
    return spd * u + (sp * thd) * perp(u);
}

// --- ArclengthGraphCurve ---------------------------------------------------

ArclengthGraphCurve::ArclengthGraphCurve(Fn1 f, Fn1 df, Fn1 ddf, double u_lo, double u_hi,
                                         bool periodic, int knots)
    : f_(std::move(f)), df_(std::move(df)), ddf_(std::move(ddf)) {
    auto ds_du = [this](double u) { return std::hypot(1.0, df_(u)); };
    std::vector<double> us(knots), ss(knots);
    const double h = (u_hi - u_lo) / (knots - 1);
    double acc = 0.0;
    us[0] = u_lo;
    ss[0] = 0.0;
    for (int i = 1; i < knots; ++i) {
        const double a = u_lo + (i - 1) * h, b = u_lo + i * h;
        acc += integrate(std::function<double(double)>(ds_du), a, b, 1e-13);
        us[i] = b;
        ss[i] = acc;
    }
    arc_ = MonotoneMap(std::move(us), std::move(ss));
    if (periodic) {
        dom_ = Domain::periodic_domain(acc, Vec2{u_hi - u_lo, 0.0});
    } else {
        dom_ = Domain::interval(0.0, acc);
    }
}

double ArclengthGraphCurve::u_of_s(double s) const {
    double u = arc_.inverse(s);
    // Newton polish on arclength(u) = s with the exact integrand
    for (int i = 0; i < 4; ++i) {
        const double g = arc_.forward(u) - s;
        u -= g / std::hypot(1.0, df_(u));
    }
    return u;
}

Vec2 ArclengthGraphCurve::eval_raw(double s) const {
    const double u = u_of_s(s);
    return {u, f_(u)};
}

Vec2 ArclengthGraphCurve::deriv_raw(double s) const {
    const double u = u_of_s(s);
    const double fp = df_(u);
    const double inv = 1.0 / std::hypot(1.0, fp);
    return {inv, fp * inv};
}

Vec2 ArclengthGraphCurve::second_deriv_raw(double s) const {
    const double u = u_of_s(s);
    const double fp = df_(u), fpp = ddf_(u);
    const double q = 1.0 + fp * fp;
    const double udot = 1.0 / std::sqrt(q);    // du/ds
    const double uddot = -fp * fpp / (q * q);  // d2u/ds2
    return {uddot, fpp * udot * udot + fp * uddot};
}

std::optional<double> ArclengthGraphCurve::tangent_angle_raw(double s) const {
    return std::atan(df_(u_of_s(s)));
}

// --- SampledCurve ----------------------------------------------------------

SampledCurve::SampledCurve(std::vector<double> s, std::vector<Vec2> c) {
    std::vector<double> xs(c.size()), ys(c.size());
    for (size_t i = 0; i < c.size(); ++i) { xs[i] = c[i].x; ys[i] = c[i].y; }
    dom_ = Domain::interval(s.front(), s.back());
    cx_ = CubicHermite(s, std::move(xs));
    cy_ = CubicHermite(std::move(s), std::move(ys));
}

Vec2 SampledCurve::eval_raw(double s) const { return {cx_.eval(s), cy_.eval(s)}; }
Vec2 SampledCurve::deriv_raw(double s) const { return {cx_.deriv(s), cy_.deriv(s)}; }
Vec2 SampledCurve::second_deriv_raw(double s) const {
    return fd_deriv([this](double u) { return deriv_raw(u); }, s, 1e-4);
}

// --- velocities ------------------------------------------------------------

Vec2 AnalyticVelocity::deriv(double s) const {
    if (deriv_) return deriv_(s);
    return VelocityProvider::deriv(s);
}

NormalVelocity::NormalVelocity(std::shared_ptr<const CurveProvider> curve,
                               std::function<double(double)> mu,
                               std::function<double(double)> mu_dot)
    : curve_(std::move(curve)), mu_(std::move(mu)), mu_dot_(std::move(mu_dot)) {}

Vec2 NormalVelocity::eval(double s) const {
    const Vec2 cd = curve_->deriv(s);
    return (mu_(s) / cd.norm()) * perp(cd);
}

Vec2 NormalVelocity::deriv(double s) const {
    if (!has_deriv()) return VelocityProvider::deriv(s);
    const Vec2 cd = curve_->deriv(s);
    const Vec2 cdd = curve_->second_deriv(s);
    const double n = cd.norm();
    const Vec2 u = cd / n;
    const double ndot = dot(u, cdd);
    // d/ds [ mu * perp(cd)/|cd| ]
    const Vec2 uperp = perp(u);
    const Vec2 uperp_dot = (perp(cdd) - ndot * uperp) / n;
    return mu_dot_(s) * uperp + mu_(s) * uperp_dot;
}

bool NormalVelocity::has_deriv() const {
    return static_cast<bool>(mu_dot_) && curve_->has_second_deriv();
}

SampledVelocity::SampledVelocity(std::vector<double> s, std::vector<Vec2> v) {
    std::vector<double> xs(v.size()), ys(v.size());
    for (size_t i = 0; i < v.size(); ++i) { xs[i] = v[i].x; ys[i] = v[i].y; }
    lo_ = s.front();
    hi_ = s.back();
    vx_ = CubicHermite(s, std::move(xs));
    vy_ = CubicHermite(std::move(s), std::move(ys));
}

Vec2 SampledVelocity::eval(double s) const { return {vx_.eval(s), vy_.eval(s)}; }
Vec2 SampledVelocity::deriv(double s) const { return {vx_.deriv(s), vy_.deriv(s)}; }

// --- CSV ingestion ----------------------------------------------------------

SampledInput load_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open CSV file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV file: " + path);
    // tolerate UTF-8 BOM and whitespace in the header
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);
    std::string hdr;
    for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) hdr += ch;
    if (hdr != "s,c1,c2,v1,v2")
        throw Error("CSV header must be `s,c1,c2,v1,v2`, got `" + line + "`");

    std::vector<double> s;
    std::vector<Vec2> c, v;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        double vals[5];
        std::string cell;
        for (int i = 0; i < 5; ++i) {
            if (!std::getline(ss, cell, ','))
                throw Error("CSV row " + std::to_string(lineno) + ": expected 5 columns");
            vals[i] = std::stod(cell);
        }
        if (!s.empty() && !(vals[0] > s.back()))
            throw Error("CSV row " + std::to_string(lineno) + ": s not strictly increasing");
        s.push_back(vals[0]);
        c.push_back({vals[1], vals[2]});
        v.push_back({vals[3], vals[4]});
    }
    if (s.size() < 4) throw Error("CSV needs at least 4 samples");
    return {std::make_shared<SampledCurve>(s, c), std::make_shared<SampledVelocity>(s, v)};
}

} // namespace maxsheet
