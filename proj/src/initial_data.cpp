#include "maxsheet/initial_data.hpp"

#include <algorithm>
#include <cmath>

#include "maxsheet/errors.hpp"

namespace maxsheet {

namespace {

double raw_angle(const CurveProvider& c, double s) {
    const Vec2 d = c.deriv(s);
    return std::atan2(d.y, d.x);
}

// Orientation-preserving reparameterization of a curve to a prescribed speed.
class ReparamCurve final : public CurveProvider {
public:
    ReparamCurve(std::shared_ptr<const CurveProvider> raw, MonotoneMap s_to_sigma,
                 std::function<double(double)> target_speed, Domain dom)
        : raw_(std::move(raw)), map_(std::move(s_to_sigma)),
          target_speed_(std::move(target_speed)), dom_(dom) {}

    Domain domain() const override { return dom_; }
    CurveKind kind() const override { return raw_->kind(); }

protected:
    Vec2 eval_raw(double sigma) const override { return raw_->eval(s_of(sigma)); }

    Vec2 deriv_raw(double sigma) const override {
        const double s = s_of(sigma);
        const Vec2 d = raw_->deriv(s);
        return (target_speed_(s) / d.norm()) * d;
    }

    std::optional<double> tangent_angle_raw(double sigma) const override {
        return raw_->tangent_angle(s_of(sigma));
    }

    double angle_turn_per_period() const override {
        // tangent direction is invariant under monotone reparameterization
        auto a0 = raw_->tangent_angle(raw_->domain().lo);
        if (!a0) return 0.0;
        auto a1 = raw_->tangent_angle(raw_->domain().lo + raw_->domain().period);
        return *a1 - *a0;
    }

private:
    double s_of(double sigma) const { return map_.inverse(sigma); }

    std::shared_ptr<const CurveProvider> raw_;
    MonotoneMap map_; // forward: s -> sigma
    std::function<double(double)> target_speed_;
    Domain dom_;
};

} // namespace

LiftTable angular_lift(const CurveProvider& c, const std::vector<double>& grid,
                       double tau_unwrap) {
    LiftTable out;
    out.s = grid;
    out.theta.resize(grid.size());
    double prev = raw_angle(c, grid.front()); // atan2 lands in (-pi, pi]
    out.theta[0] = prev;
    for (size_t i = 1; i < grid.size(); ++i) {
        const double raw = raw_angle(c, grid[i]);
        const double step = mod_two_pi_centered(raw - prev);
        if (std::fabs(step) > kPi - tau_unwrap)
            throw GridTooCoarse("angular lift: tangent angle step exceeds pi between samples");
        prev += step;
        out.theta[i] = prev;
    }
    const Domain d = c.domain();
    if (d.periodic) {
        const double raw = raw_angle(c, grid.front() + d.period);
        out.turn_per_period = prev + mod_two_pi_centered(raw - prev) - out.theta[0];
    }
    return out;
}

InitialData::InitialData(std::shared_ptr<const CurveProvider> c,
                         std::shared_ptr<const VelocityProvider> v,
                         double window_lo, double window_hi, Tolerances tol,
                         int lift_samples)
    : c_(std::move(c)), v_(std::move(v)), win_lo_(window_lo), win_hi_(window_hi), tol_(tol) {
    const Domain dom = c_->domain();
    if (dom.periodic) {
        win_lo_ = dom.lo;
        win_hi_ = dom.lo + dom.period;
    } else {
        win_lo_ = std::max(win_lo_, dom.lo);
        win_hi_ = std::min(win_hi_, dom.hi);
    }
    if (!(win_hi_ > win_lo_)) throw Error("InitialData: empty window");

    // lift table (used when the provider carries no exact lift)
    if (!c_->tangent_angle(win_lo_)) {
        std::vector<double> grid(lift_samples);
        const double h = (win_hi_ - win_lo_) / (lift_samples - 1);
        for (int i = 0; i < lift_samples; ++i) grid[i] = win_lo_ + i * h;
        lift_ = angular_lift(*c_, grid, tol_.unwrap);
    }

    v_zero_ = v_->is_zero();
    if (!v_zero_) {
        const double base = (win_lo_ <= 0.0 && win_hi_ >= 0.0) ? 0.0 : win_lo_;
        w_ = CumulativeIntegral([this](double s) { return v_->eval(s); }, win_lo_, win_hi_,
                                base, 2048);
        if (dom.periodic)
            w_period_ = integrate(std::function<Vec2(double)>(
                                      [this](double s) { return v_->eval(s); }),
                                  win_lo_, win_hi_, 1e-12);
    }

    // gauge residuals over the window
    const int n = 512;
    for (int i = 0; i <= n; ++i) {
        const double s = win_lo_ + (win_hi_ - win_lo_) * i / n;
        const Vec2 cd = c_->deriv(s);
        const Vec2 vv = v_->eval(s);
        max_orth_ = std::max(max_orth_, std::fabs(dot(cd, vv)));
        max_speed_ = std::max(max_speed_, std::fabs(cd.norm2() + vv.norm2() - 1.0));
    }
}

Vec2 InitialData::W(double s) const {
    if (v_zero_) return {0.0, 0.0};
    if (periodic()) {
        const double P = period();
        const double n = std::floor((s - win_lo_) / P);
        return w_.eval(s - n * P) + n * w_period_;
    }
    return w_.eval(s);
}

Vec2 InitialData::W_between(double a, double b) const {
    if (v_zero_) return {0.0, 0.0};
    if (!periodic()) return w_.between(a, b);
    const double P = period();
    const double na = std::floor((a - win_lo_) / P);
    const double nb = std::floor((b - win_lo_) / P);
    const double ar = a - na * P, br = b - nb * P;
    // int_a^b = int over the reduced offsets plus whole periods
    return w_.between(ar, br) + (nb - na) * w_period_;
}

double InitialData::theta(double s) const {
    if (auto exact = c_->tangent_angle(s)) return *exact;
    double base = s;
    long winding = 0;
    if (periodic()) {
        const double P = period();
        const double n = std::floor((s - win_lo_) / P);
        winding = static_cast<long>(n);
        base = s - n * P;
    }
    const double raw = raw_angle(*c_, base);
    // branch from the nearest table cell: the linear reference is within pi of truth
    const auto& xs = lift_.s;
    const double h = xs[1] - xs[0];
    const size_t k = std::min(xs.size() - 2,
                              static_cast<size_t>(std::max(0.0, (base - xs.front()) / h)));
    const double u = std::clamp((base - xs[k]) / h, 0.0, 1.0);
    const double ref = lift_.theta[k] * (1.0 - u) + lift_.theta[k + 1] * u;
    const double lifted = raw + kTwoPi * std::round((ref - raw) / kTwoPi);
    return lifted + static_cast<double>(winding) * lift_.turn_per_period;
}

double InitialData::mu(double s) const {
    const Vec2 cd = c_->deriv(s);
    const Vec2 vv = v_->eval(s);
    const double m = cross(cd, vv) / cd.norm();
    return std::clamp(m, -1.0, 1.0);
}

InitialData normalize_initial_data(std::shared_ptr<const CurveProvider> c_raw,
                                   std::shared_ptr<const VelocityProvider> v_raw,
                                   const NormalizeOptions& opt) {
    const Domain dom = c_raw->domain();
    double lo = opt.window_lo, hi = opt.window_hi;
    if (dom.periodic) {
        lo = dom.lo;
        hi = dom.lo + dom.period;
    } else {
        lo = std::max(lo, dom.lo);
        hi = std::min(hi, dom.hi);
    }
    if (!(hi > lo)) throw Error("normalize_initial_data: empty window");

    const int n = opt.grid;
    const double h = (hi - lo) / n;

    bool normalized = true;
    for (int i = 0; i <= n; ++i) {
        const double s = lo + i * h;
        const Vec2 cd = c_raw->deriv(s);
        const Vec2 vv = v_raw->eval(s);
        const double speed = cd.norm();
        if (speed < opt.tol.immersion)
            throw NotImmersed("|c'| below immersion tolerance at s = " + std::to_string(s));
        if (vv.norm() >= 1.0 - opt.tol.timelike)
            throw NotTimelike("|v| >= 1 - tau_timelike at s = " + std::to_string(s));
        if (std::fabs(dot(cd, vv)) > opt.tol.gauge ||
            std::fabs(cd.norm2() + vv.norm2() - 1.0) > opt.tol.gauge)
            normalized = false;
    }
    if (normalized)
        return InitialData(std::move(c_raw), std::move(v_raw), opt.window_lo, opt.window_hi,
                           opt.tol);

    // signed normal speed of the raw data; projection discards the tangential part
    auto mu_raw = [c_raw, v_raw](double s) {
        const Vec2 cd = c_raw->deriv(s);
        const double m = cross(cd, v_raw->eval(s)) / cd.norm();
        return std::clamp(m, -1.0, 1.0);
    };
    // d sigma / d s for the speed constraint |dc/dsigma|^2 = 1 - mu^2
    auto dsigma = [c_raw, mu_raw](double s) {
        const double m = mu_raw(s);
        return c_raw->deriv(s).norm() / std::sqrt(1.0 - m * m);
    };

    std::vector<double> sk(n + 1), sigk(n + 1);
    double acc = 0.0;
    sk[0] = lo;
    sigk[0] = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double a = lo + (i - 1) * h, b = lo + i * h;
        acc += integrate(std::function<double(double)>(dsigma), a, b, 1e-12);
        sk[i] = b;
        sigk[i] = acc;
    }
    // anchor sigma(0) = 0 when the window straddles 0
    double sig0 = 0.0;
    if (lo < 0.0 && hi > 0.0) {
        const int k = static_cast<int>((0.0 - lo) / h);
        sig0 = sigk[k] + integrate(std::function<double(double)>(dsigma), sk[k], 0.0, 1e-12);
    }
    for (auto& v : sigk) v -= sig0;
    MonotoneMap map(sk, sigk);

    Domain new_dom;
    if (dom.periodic) {
        new_dom = Domain::periodic_domain(acc, dom.period_shift);
        new_dom.lo = sigk.front();
        new_dom.hi = sigk.front() + acc;
    } else {
        new_dom = Domain::interval(sigk.front(), sigk.back());
    }

    auto target_speed = [mu_raw](double s) {
        const double m = mu_raw(s);
        return std::sqrt(1.0 - m * m);
    };
    auto curve = std::make_shared<ReparamCurve>(c_raw, map, target_speed, new_dom);
    auto velocity = std::make_shared<NormalVelocity>(
        curve, [mu_raw, map](double sigma) { return mu_raw(map.inverse(sigma)); });

    Tolerances tol = opt.tol;
    return InitialData(std::move(curve), std::move(velocity), new_dom.lo, new_dom.hi, tol);
}

} // namespace maxsheet
