#pragma once

namespace maxsheet {

// Tolerance budget for one data set. Analytic curves get the tight values;
// sampled (interpolated) curves the loose ones, where interpolation error
// dominates.
struct Tolerances {
    double gauge = 1e-9;       // orthonormal-frame residuals
    double immersion = 1e-8;   // minimum |c'(s)| treated as an immersion
    double timelike = 1e-12;   // margin below |v| = 1
    double unwrap = 1e-3;      // max raw angle step below pi when unwrapping
    double sing = 1e-10;       // |beta mod 2pi| accepted as singular
    double angle = 1e-8;       // angular comparisons (semicircle test, odd-multiple test)
    double ode = 1e-9;         // per-step local ODE error
    double transform = 1e-6;   // gauge residual after isothermalization
    double curv = 1e-6;        // curvature cross-checks
    double sup = 1e-9;         // safety margin on sampled suprema
    double intersect = 1e-9;   // Newton tolerance for self-intersections

    static Tolerances analytic() { return {}; }
    static Tolerances sampled() {
        Tolerances t;
        t.gauge = 1e-6;
        t.sing = 1e-6;
        return t;
    }
};

} // namespace maxsheet
