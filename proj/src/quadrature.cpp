#include "maxsheet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxsheet {

namespace {

// G7/K15 nodes and weights on [-1,1]; column layout {x, gauss w, kronrod w}.
constexpr double kNodes[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978554},
    {0.207784955007898468, 0.0,                  0.204432940075298892},
    {0.586087235467691130, 0.0,                  0.169004726639267903},
    {0.864864423359769073, 0.0,                  0.104790010322250184},
    {0.991455371120812639, 0.0,                  0.022935322010529225},
};

template <class T>
T gk15_impl(const std::function<T(double)>& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    T y0 = f(c);
    T g7 = kNodes[0][1] * y0;
    T k15 = kNodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kNodes[i][0];
        T yi = f(c + dx) + f(c - dx);
        if (kNodes[i][1] != 0.0) g7 += kNodes[i][1] * yi;
        k15 += kNodes[i][2] * yi;
    }
    g7 = h * g7;
    k15 = h * k15;

    double diff;
    if constexpr (std::is_same_v<T, double>) {
        diff = std::fabs(g7 - k15);
    } else {
        diff = (g7 - k15).norm();
    }
    // quadpack-style sharpened estimate
    err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return k15;
}

template <class T>
T adaptive_impl(const std::function<T(double)>& f, double a, double b,
                double abs_tol, int depth) {
    double err;
    T val = gk15_impl<T>(f, a, b, err);
    if (err <= abs_tol || depth <= 0) return val;
    const double mid = 0.5 * (a + b);
    return adaptive_impl<T>(f, a, mid, 0.5 * abs_tol, depth - 1) +
           adaptive_impl<T>(f, mid, b, 0.5 * abs_tol, depth - 1);
}

} // namespace

double gk15(const std::function<double(double)>& f, double a, double b, double& err) {
    return gk15_impl<double>(f, a, b, err);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    return adaptive_impl<double>(f, a, b, abs_tol, max_depth);
}

Vec2 integrate(const std::function<Vec2(double)>& f, double a, double b,
               double abs_tol, int max_depth) {
    if (a == b) return Vec2{0.0, 0.0};
    return adaptive_impl<Vec2>(f, a, b, abs_tol, max_depth);
}

CumulativeIntegral::CumulativeIntegral(std::function<Vec2(double)> f, double lo, double hi,
                                       double base, int knots, double abs_tol)
    : f_(std::move(f)), lo_(lo), hi_(hi), abs_tol_(abs_tol) {
    if (!(hi > lo) || knots < 2) throw std::invalid_argument("CumulativeIntegral: bad range");
    step_ = (hi - lo) / (knots - 1);
    knots_.resize(knots);
    panels_.resize(knots - 1);

    // accumulate panel integrals, then anchor so that F(base) = 0
    knots_[0] = Vec2{0.0, 0.0};
    for (int i = 1; i < knots; ++i) {
        const double a = lo_ + (i - 1) * step_;
        const double b = lo_ + i * step_;
        panels_[i - 1] = maxsheet::integrate(f_, a, b, abs_tol_);
        knots_[i] = knots_[i - 1] + panels_[i - 1];
    }
    Vec2 off{0.0, 0.0};
    if (base > lo_ && base < hi_) {
        const int k = static_cast<int>((base - lo_) / step_);
        off = knots_[k] + maxsheet::integrate(f_, lo_ + k * step_, base, abs_tol_);
    } else if (base >= hi_) {
        off = knots_.back();
    }
    for (auto& v : knots_) v -= off;
}

Vec2 CumulativeIntegral::eval(double s) const {
    if (knots_.empty()) return Vec2{0.0, 0.0};
    double sc = s;
    if (sc < lo_) sc = lo_;
    if (sc > hi_) sc = hi_;
    int k = static_cast<int>((sc - lo_) / step_);
    if (k >= static_cast<int>(knots_.size()) - 1) k = static_cast<int>(knots_.size()) - 2;
    const double a = lo_ + k * step_;
    // nearest knot keeps the local panel short
    if (sc - a > 0.5 * step_) {
        const double b = lo_ + (k + 1) * step_;
        return knots_[k + 1] - maxsheet::integrate(f_, sc, b, abs_tol_);
    }
    return knots_[k] + maxsheet::integrate(f_, a, sc, abs_tol_);
}

Vec2 CumulativeIntegral::between(double a, double b) const {
    if (a == b) return Vec2{0.0, 0.0};
    if (b < a) return -between(b, a);
    const double ac = std::max(a, lo_), bc = std::min(b, hi_);
    if (!(bc > ac)) return Vec2{0.0, 0.0};

    const int n = static_cast<int>(panels_.size());
    int ka = static_cast<int>(std::ceil((ac - lo_) / step_));
    int kb = static_cast<int>(std::floor((bc - lo_) / step_));
    ka = std::min(std::max(ka, 0), n);
    kb = std::min(std::max(kb, 0), n);
    if (ka > kb) return maxsheet::integrate(f_, ac, bc, abs_tol_);

    Vec2 acc = maxsheet::integrate(f_, ac, lo_ + ka * step_, abs_tol_);
    for (int i = ka; i < kb; ++i) acc += panels_[i];
    acc += maxsheet::integrate(f_, lo_ + kb * step_, bc, abs_tol_);
    return acc;
}

} // namespace maxsheet
