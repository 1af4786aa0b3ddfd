#include "maxsheet/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxsheet {

namespace {

std::vector<double> parabolic_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    std::vector<double> m(n);
    if (n == 2) {
        m[0] = m[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return m;
    }
    for (int i = 1; i < n - 1; ++i) {
        const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        const double d0 = (y[i] - y[i - 1]) / h0, d1 = (y[i + 1] - y[i]) / h1;
        m[i] = (h1 * d0 + h0 * d1) / (h0 + h1);
    }
    {
        const double h0 = x[1] - x[0], h1 = x[2] - x[1];
        const double d0 = (y[1] - y[0]) / h0, d1 = (y[2] - y[1]) / h1;
        m[0] = d0 + (d0 - d1) * h0 / (h0 + h1);
    }
    {
        const int n1 = n - 1;
        const double h0 = x[n1 - 1] - x[n1 - 2], h1 = x[n1] - x[n1 - 1];
        const double d0 = (y[n1 - 1] - y[n1 - 2]) / h0, d1 = (y[n1] - y[n1 - 1]) / h1;
        m[n1] = d1 + (d1 - d0) * h1 / (h0 + h1);
    }
    return m;
}

} // namespace

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() < 2 || x_.size() != y_.size())
        throw std::invalid_argument("CubicHermite: need >= 2 knots");
    for (size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("CubicHermite: knots not increasing");
    m_ = parabolic_slopes(x_, y_);
}

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> slope)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slope)) {
    if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != m_.size())
        throw std::invalid_argument("CubicHermite: size mismatch");
    for (size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("CubicHermite: knots not increasing");
}

int CubicHermite::locate(double s) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), s);
    int k = static_cast<int>(it - x_.begin()) - 1;
    return std::clamp(k, 0, static_cast<int>(x_.size()) - 2);
}

double CubicHermite::eval(double s) const {
    const int k = locate(s);
    const double h = x_[k + 1] - x_[k];
    const double u = (s - x_[k]) / h;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return h00 * y_[k] + h * h10 * m_[k] + h01 * y_[k + 1] + h * h11 * m_[k + 1];
}

double CubicHermite::deriv(double s) const {
    const int k = locate(s);
    const double h = x_[k + 1] - x_[k];
    const double u = (s - x_[k]) / h;
    const double u2 = u * u;
    const double d00 = (6 * u2 - 6 * u) / h, d10 = 3 * u2 - 4 * u + 1;
    const double d01 = (-6 * u2 + 6 * u) / h, d11 = 3 * u2 - 2 * u;
    return d00 * y_[k] + d10 * m_[k] + d01 * y_[k + 1] + d11 * m_[k + 1];
}

MonotoneMap::MonotoneMap(std::vector<double> x, std::vector<double> y) {
    for (size_t i = 1; i < y.size(); ++i)
        if (!(y[i] > y[i - 1])) throw std::invalid_argument("MonotoneMap: values not increasing");
    fwd_ = CubicHermite(std::move(x), std::move(y));
}

double MonotoneMap::inverse(double y, double tol) const {
    const auto& xs = fwd_.knots();
    const auto& ys = fwd_.values();
    if (y <= ys.front()) return xs.front();
    if (y >= ys.back()) return xs.back();
    auto it = std::upper_bound(ys.begin(), ys.end(), y);
    int k = static_cast<int>(it - ys.begin()) - 1;
    double a = xs[k], b = xs[k + 1];

    // bisection to a safe bracket, then Newton
    for (int i = 0; i < 20; ++i) {
        const double mid = 0.5 * (a + b);
        if (fwd_.eval(mid) < y) a = mid; else b = mid;
    }
    double x = 0.5 * (a + b);
    for (int i = 0; i < 60; ++i) {
        const double f = fwd_.eval(x) - y;
        const double df = fwd_.deriv(x);
        if (df <= 0.0) break;
        const double step = f / df;
        x -= step;
        if (x < a || x > b) { x = std::clamp(x, a, b); }
        if (std::fabs(step) < tol) break;
    }
    return x;
}

} // namespace maxsheet
