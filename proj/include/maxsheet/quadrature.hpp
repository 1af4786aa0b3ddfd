#pragma once

#include <functional>
#include <vector>

#include "maxsheet/geometry.hpp"

namespace maxsheet {

// Gauss-Kronrod 7/15 estimate of the integral of f over [a,b].
// The absolute error estimate is written to err.
double gk15(const std::function<double(double)>& f, double a, double b, double& err);

// Adaptive Gauss-Kronrod integration by interval bisection.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-11, int max_depth = 48);

Vec2 integrate(const std::function<Vec2(double)>& f, double a, double b,
               double abs_tol = 1e-11, int max_depth = 48);

// Antiderivative F(s) = int_base^s f, accumulated once to a knot grid by
// adaptive quadrature and evaluated by one local panel from the nearest knot.
// Evaluation cost is one gk15 panel; accuracy is that of the accumulation.
class CumulativeIntegral {
public:
    CumulativeIntegral() = default;
    CumulativeIntegral(std::function<Vec2(double)> f, double lo, double hi,
                       double base = 0.0, int knots = 1024, double abs_tol = 1e-12);

    Vec2 eval(double s) const;
    // int_a^b f summed from the cached panels strictly inside [a, b] plus
    // local end panels; the result depends only on f restricted to [a, b]
    Vec2 between(double a, double b) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    std::function<Vec2(double)> f_;
    double lo_ = 0.0, hi_ = 0.0, step_ = 0.0;
    std::vector<Vec2> knots_;  // prefix sums, anchored at base
    std::vector<Vec2> panels_; // per-panel integrals
    double abs_tol_ = 1e-12;
};

} // namespace maxsheet
