#include "maxsheet/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxsheet {

double OdeSolution::eval(double tq) const {
    if (t.size() < 2) return y.empty() ? 0.0 : y.front();
    const bool fwd = t.back() >= t.front();
    double lo = fwd ? t.front() : t.back();
    double hi = fwd ? t.back() : t.front();
    double tc = std::clamp(tq, lo, hi);

    size_t k = 0;
    if (fwd) {
        auto it = std::upper_bound(t.begin(), t.end(), tc);
        k = static_cast<size_t>(std::max<long>(1, it - t.begin())) - 1;
    } else {
        auto it = std::upper_bound(t.begin(), t.end(), tc, std::greater<double>());
        k = static_cast<size_t>(std::max<long>(1, it - t.begin())) - 1;
    }
    k = std::min(k, t.size() - 2);

    const double h = t[k + 1] - t[k];
    const double u = (tc - t[k]) / h;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return h00 * y[k] + h * h10 * dy[k] + h01 * y[k + 1] + h * h11 * dy[k + 1];
}

OdeSolution solve_ode(const std::function<double(double, double)>& f,
                      double t0, double y0, double t1, double tol,
                      const std::function<bool(double, double)>& stop) {
    // Cash-Karp tableau
    static const double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
    static const double b21 = 1.0 / 5;
    static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
    static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
    static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
    static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                        b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
    static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594, c6 = 512.0 / 1771;
    static const double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                        d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336, d6 = c6 - 1.0 / 4;

    OdeSolution sol;
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);

    double t = t0, y = y0;
    double dydt = f(t, y);
    sol.t.push_back(t);
    sol.y.push_back(y);
    sol.dy.push_back(dydt);
    if (span == 0.0) return sol;

    double h = dir * std::min(span, std::max(1e-6, span / 64.0));
    int guard = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++guard > 2000000) throw std::runtime_error("solve_ode: step count exceeded");
        if (dir * (t + h - t1) > 0.0) h = t1 - t;

        const double k1 = dydt;
        const double k2 = f(t + a2 * h, y + h * (b21 * k1));
        const double k3 = f(t + a3 * h, y + h * (b31 * k1 + b32 * k2));
        const double k4 = f(t + a4 * h, y + h * (b41 * k1 + b42 * k2 + b43 * k3));
        const double k5 = f(t + a5 * h, y + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
        const double k6 = f(t + a6 * h, y + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5));

        const double ynew = y + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
        const double err = std::fabs(h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6));
        const double scale = tol * std::max(1.0, std::fabs(y));

        if (err <= scale) {
            t += h;
            y = ynew;
            dydt = f(t, y);
            sol.t.push_back(t);
            sol.y.push_back(y);
            sol.dy.push_back(dydt);
            if (stop && stop(t, y)) break;
        }
        double fac = (err > 0.0) ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(t)))
            throw std::runtime_error("solve_ode: step size underflow");
    }
    return sol;
}

} // namespace maxsheet
