#pragma once

#include <memory>
#include <vector>

#include "maxsheet/curve.hpp"
#include "maxsheet/geometry.hpp"
#include "maxsheet/tolerances.hpp"

namespace maxsheet {

struct LiftTable {
    std::vector<double> s;
    std::vector<double> theta;
    double turn_per_period = 0.0; // added per winding for periodic curves
};

// Gauge-normalized initial data (c, v) with <c',v> = 0 and |c'|^2 + |v|^2 = 1,
// plus the cached antiderivative W and the angular lifts theta, mu, alpha+-.
// Immutable after construction; safe to share across threads.
class InitialData {
public:
    InitialData(std::shared_ptr<const CurveProvider> c,
                std::shared_ptr<const VelocityProvider> v,
                double window_lo, double window_hi,
                Tolerances tol = Tolerances::analytic(),
                int lift_samples = 8192);

    Vec2 curve(double s) const { return c_->eval(s); }
    Vec2 curve_deriv(double s) const { return c_->deriv(s); }
    Vec2 curve_second_deriv(double s) const { return c_->second_deriv(s); }
    Vec2 velocity(double s) const { return v_->eval(s); }
    Vec2 velocity_deriv(double s) const { return v_->deriv(s); }
    Vec2 W(double s) const;                  // int_0^s v
    Vec2 W_between(double a, double b) const; // int_a^b v, local panels only

    // angular lifts
    double theta(double s) const;
    double mu(double s) const;
    double alpha_plus(double s) const { return theta(s) + std::asin(mu(s)); }
    double alpha_minus(double s) const { return theta(s) - std::asin(mu(s)) - kPi; }

    // null directions a+- = v +- c'
    Vec2 a_plus(double s) const { return v_->eval(s) + c_->deriv(s); }
    Vec2 a_minus(double s) const { return v_->eval(s) - c_->deriv(s); }
    Vec2 a_plus_deriv(double s) const { return v_->deriv(s) + c_->second_deriv(s); }
    Vec2 a_minus_deriv(double s) const { return v_->deriv(s) - c_->second_deriv(s); }

    double window_lo() const { return win_lo_; }
    double window_hi() const { return win_hi_; }
    bool periodic() const { return c_->domain().periodic; }
    double period() const { return c_->domain().period; }
    bool in_window(double s) const { return periodic() || (s >= win_lo_ && s <= win_hi_); }

    const Tolerances& tol() const { return tol_; }
    const CurveProvider& curve_provider() const { return *c_; }
    const VelocityProvider& velocity_provider() const { return *v_; }
    std::shared_ptr<const CurveProvider> curve_ptr() const { return c_; }

    // max residuals of the two gauge constraints on the lift grid
    double max_orthogonality_residual() const { return max_orth_; }
    double max_speed_residual() const { return max_speed_; }

private:
    std::shared_ptr<const CurveProvider> c_;
    std::shared_ptr<const VelocityProvider> v_;
    double win_lo_, win_hi_;
    Tolerances tol_;
    LiftTable lift_;
    CumulativeIntegral w_;
    bool v_zero_ = false;
    Vec2 w_period_{0.0, 0.0};
    double max_orth_ = 0.0, max_speed_ = 0.0;
};

struct NormalizeOptions {
    double window_lo = -20.0;
    double window_hi = 20.0;
    Tolerances tol = Tolerances::analytic();
    int grid = 4096;
};

// Projects out the tangential velocity component, reparameterizes to the
// orthonormal gauge, and builds the lifts. The geometric image of the curve
// is unchanged and the reparameterization is monotone.
InitialData normalize_initial_data(std::shared_ptr<const CurveProvider> c_raw,
                                   std::shared_ptr<const VelocityProvider> v_raw,
                                   const NormalizeOptions& opt = {});

// Continuous unwrapped lift of the tangent angle over an explicit grid;
// branch fixed by theta(grid front) in (-pi, pi]. Throws GridTooCoarse when a
// raw step between neighbours exceeds pi - tol.unwrap.
LiftTable angular_lift(const CurveProvider& c, const std::vector<double>& grid,
                       double tau_unwrap);

} // namespace maxsheet
