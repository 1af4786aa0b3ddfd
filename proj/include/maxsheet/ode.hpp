#pragma once

#include <functional>
#include <vector>

namespace maxsheet {

// One scalar trajectory y(t) with cubic Hermite dense output between steps.
struct OdeSolution {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> dy;

    double eval(double tq) const;
    double t_front() const { return t.front(); }
    double t_back() const { return t.back(); }
};

// Adaptive Runge-Kutta 4(5) (Cash-Karp pairs) for scalar ODEs y' = f(t, y).
// Integrates from t0 to t1 (either direction). stop, when given, aborts the
// solve as soon as it returns true at an accepted step.
OdeSolution solve_ode(const std::function<double(double, double)>& f,
                      double t0, double y0, double t1,
                      double tol = 1e-9,
                      const std::function<bool(double, double)>& stop = nullptr);

} // namespace maxsheet
