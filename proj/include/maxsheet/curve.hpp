#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxsheet/geometry.hpp"
#include "maxsheet/interp.hpp"
#include "maxsheet/quadrature.hpp"

namespace maxsheet {

// Parameter domain of a curve. Periodic curves repeat with c(s+P) = c(s) + shift
// (shift = 0 for closed curves); non-periodic curves are evaluable on [lo, hi],
// which may be infinite for closed-form curves.
struct Domain {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool periodic = false;
    double period = 0.0;
    Vec2 period_shift{0.0, 0.0};

    static Domain all() { return {}; }
    static Domain interval(double lo, double hi) { return {lo, hi, false, 0.0, {}}; }
    static Domain periodic_domain(double period, Vec2 shift = {0.0, 0.0}) {
        return {0.0, period, true, period, shift};
    }
    bool contains(double s) const { return periodic || (s >= lo && s <= hi); }
};

enum class CurveKind { analytic, sampled };

// Planar curve c(s) with first-derivative access. Periodic wrapping is handled
// here; implementations provide values on the fundamental domain.
class CurveProvider {
public:
    virtual ~CurveProvider() = default;

    Vec2 eval(double s) const;
    Vec2 deriv(double s) const;
    Vec2 second_deriv(double s) const;
    // Continuous tangent-angle lift when the provider knows it exactly.
    std::optional<double> tangent_angle(double s) const;

    virtual Domain domain() const = 0;
    virtual CurveKind kind() const = 0;
    virtual bool has_second_deriv() const { return false; }

protected:
    virtual Vec2 eval_raw(double s) const = 0;
    virtual Vec2 deriv_raw(double s) const = 0;
    virtual Vec2 second_deriv_raw(double s) const; // default: Richardson FD of deriv
    virtual std::optional<double> tangent_angle_raw(double) const { return std::nullopt; }
    // total change of the tangent angle over one period (2*pi * turning number)
    virtual double angle_turn_per_period() const { return 0.0; }

    // maps s into the fundamental domain, returning the winding count
    double reduce(double s, long& winding) const;
};

// Timelike velocity field v(s), |v| < 1.
class VelocityProvider {
public:
    virtual ~VelocityProvider() = default;
    virtual Vec2 eval(double s) const = 0;
    virtual Vec2 deriv(double s) const; // default: Richardson FD
    virtual bool is_zero() const { return false; }
    virtual bool has_deriv() const { return false; }
};

// --- concrete providers ---------------------------------------------------

class AnalyticCurve final : public CurveProvider {
public:
    using Fn = std::function<Vec2(double)>;
    using AngleFn = std::function<double(double)>;

    AnalyticCurve(Fn eval, Fn deriv, Domain dom);
    AnalyticCurve(Fn eval, Fn deriv, Fn dderiv, Domain dom, AngleFn angle = nullptr,
                  double turn = 0.0);

    Domain domain() const override { return dom_; }
    CurveKind kind() const override { return CurveKind::analytic; }
    bool has_second_deriv() const override { return static_cast<bool>(dderiv_); }

protected:
    Vec2 eval_raw(double s) const override { return eval_(s); }
    Vec2 deriv_raw(double s) const override { return deriv_(s); }
    Vec2 second_deriv_raw(double s) const override;
    std::optional<double> tangent_angle_raw(double s) const override;
    double angle_turn_per_period() const override { return turn_; }

private:
    Fn eval_, deriv_, dderiv_;
    AngleFn angle_;
    Domain dom_;
    double turn_ = 0.0;
};

// Curve reconstructed from a tangent-angle profile theta(s) and a speed
// profile: c'(s) = speed(s) * (cos theta, sin theta). Positions come from a
// cumulative quadrature over a core interval; outside the core the profile
// must be constant and the curve continues as exact straight lines.
class TangentAngleCurve final : public CurveProvider {
public:
    struct Profile {
        std::function<double(double)> theta;
        std::function<double(double)> theta_dot;
        std::function<double(double)> speed;     // null -> unit speed
        std::function<double(double)> speed_dot; // null -> 0
    };

    // core [core_lo, core_hi] is where the profile varies; with exact_tails
    // the curve extends by straight lines beyond the core, otherwise the
    // domain is clamped to the core.
    TangentAngleCurve(Profile p, double core_lo, double core_hi, Vec2 anchor_value,
                      double anchor_s, bool exact_tails, int knots = 2048);

    Domain domain() const override { return dom_; }
    CurveKind kind() const override { return CurveKind::analytic; }
    bool has_second_deriv() const override { return true; }

protected:
    Vec2 eval_raw(double s) const override;
    Vec2 deriv_raw(double s) const override;
    Vec2 second_deriv_raw(double s) const override;
    std::optional<double> tangent_angle_raw(double s) const override { return profile_.theta(s); }

private:
    double speed(double s) const { return profile_.speed ? profile_.speed(s) : 1.0; }
    double speed_dot(double s) const { return profile_.speed_dot ? profile_.speed_dot(s) : 0.0; }

    Profile profile_;
    double core_lo_, core_hi_;
    bool exact_tails_;
    CumulativeIntegral pos_;
    Vec2 anchor_off_, core_lo_val_, core_hi_val_;
    Domain dom_;
};

// Arclength parameterisation of the graph {(u, f(u))}. Optionally periodic:
// f(u + u_period) = f(u), giving c(s + L) = c(s) + (u_period, 0).
class ArclengthGraphCurve final : public CurveProvider {
public:
    using Fn1 = std::function<double(double)>;
    ArclengthGraphCurve(Fn1 f, Fn1 df, Fn1 ddf, double u_lo, double u_hi,
                        bool periodic = false, int knots = 2048);

    Domain domain() const override { return dom_; }
    CurveKind kind() const override { return CurveKind::analytic; }
    bool has_second_deriv() const override { return true; }
    double length() const { return dom_.periodic ? dom_.period : (arc_.y_hi() - arc_.y_lo()); }

protected:
    Vec2 eval_raw(double s) const override;
    Vec2 deriv_raw(double s) const override;
    Vec2 second_deriv_raw(double s) const override;
    std::optional<double> tangent_angle_raw(double s) const override;

private:
    double u_of_s(double s) const;
    Fn1 f_, df_, ddf_;
    MonotoneMap arc_; // u -> s(u)
    Domain dom_;
};

// C1 cubic interpolation of sampled points (CSV ingestion path).
class SampledCurve final : public CurveProvider {
public:
    SampledCurve(std::vector<double> s, std::vector<Vec2> c);

    Domain domain() const override { return dom_; }
    CurveKind kind() const override { return CurveKind::sampled; }
    bool has_second_deriv() const override { return true; }

protected:
    Vec2 eval_raw(double s) const override;
    Vec2 deriv_raw(double s) const override;
    Vec2 second_deriv_raw(double s) const override;

private:
    CubicHermite cx_, cy_;
    Domain dom_;
};

class ZeroVelocity final : public VelocityProvider {
public:
    Vec2 eval(double) const override { return {0.0, 0.0}; }
    Vec2 deriv(double) const override { return {0.0, 0.0}; }
    bool is_zero() const override { return true; }
    bool has_deriv() const override { return true; }
};

class AnalyticVelocity final : public VelocityProvider {
public:
    using Fn = std::function<Vec2(double)>;
    explicit AnalyticVelocity(Fn eval, Fn deriv = nullptr)
        : eval_(std::move(eval)), deriv_(std::move(deriv)) {}
    Vec2 eval(double s) const override { return eval_(s); }
    Vec2 deriv(double s) const override;
    bool has_deriv() const override { return static_cast<bool>(deriv_); }

private:
    Fn eval_, deriv_;
};

// v(s) = mu(s) * perp(unit tangent of curve)
class NormalVelocity final : public VelocityProvider {
public:
    NormalVelocity(std::shared_ptr<const CurveProvider> curve,
                   std::function<double(double)> mu,
                   std::function<double(double)> mu_dot = nullptr);
    Vec2 eval(double s) const override;
    Vec2 deriv(double s) const override;
    bool has_deriv() const override;
    double mu(double s) const { return mu_(s); }

private:
    std::shared_ptr<const CurveProvider> curve_;
    std::function<double(double)> mu_, mu_dot_;
};

class SampledVelocity final : public VelocityProvider {
public:
    SampledVelocity(std::vector<double> s, std::vector<Vec2> v);
    Vec2 eval(double s) const override;
    Vec2 deriv(double s) const override;
    bool has_deriv() const override { return true; }

private:
    CubicHermite vx_, vy_;
    double lo_, hi_;
};

// CSV ingestion: header `s,c1,c2,v1,v2`, strictly increasing s.
struct SampledInput {
    std::shared_ptr<CurveProvider> curve;
    std::shared_ptr<VelocityProvider> velocity;
};
SampledInput load_curve_csv(const std::string& path);

} // namespace maxsheet
