#pragma once

#include <vector>

namespace maxsheet {

// C1 piecewise-cubic Hermite interpolant on a strictly increasing knot grid.
// Slopes may be supplied; otherwise three-point (parabolic) slopes are used,
// one-sided at the ends.
class CubicHermite {
public:
    CubicHermite() = default;
    CubicHermite(std::vector<double> x, std::vector<double> y);
    CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> slope);

    double eval(double s) const;
    double deriv(double s) const;
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    int locate(double s) const;
    std::vector<double> x_, y_, m_;
};

// Strictly monotone increasing map given by knot samples; provides the
// inverse by bisection seeded from the grid plus Newton polish when a
// derivative is available.
class MonotoneMap {
public:
    MonotoneMap() = default;
    // y must be strictly increasing along x
    MonotoneMap(std::vector<double> x, std::vector<double> y);

    double forward(double x) const { return fwd_.eval(x); }
    double forward_deriv(double x) const { return fwd_.deriv(x); }
    double inverse(double y, double tol = 1e-13) const;

    double x_lo() const { return fwd_.x_front(); }
    double x_hi() const { return fwd_.x_back(); }
    double y_lo() const { return fwd_.values().front(); }
    double y_hi() const { return fwd_.values().back(); }

private:
    CubicHermite fwd_;
};

} // namespace maxsheet
