#pragma once

#include <optional>
#include <vector>

#include "maxsheet/initial_data.hpp"
#include "maxsheet/sheet.hpp"

namespace maxsheet {

// Domain of dependence of the initial interval [s1, s2].
struct CharacteristicDiamond {
    double s1, s2;
    bool contains(double s, double t) const {
        return s1 + std::fabs(t) <= s && s <= s2 - std::fabs(t);
    }
    double half_width() const { return 0.5 * (s2 - s1); }
};

// beta(s,t) = alpha+(s+t) - alpha-(s-t); continuous lift, evaluated by exact
// composition of the stored lifts. The evolution is singular exactly where
// beta is a multiple of 2*pi.
class BetaField {
public:
    explicit BetaField(const InitialData& data) : data_(&data) {}
    double eval(double s, double t) const {
        return data_->alpha_plus(s + t) - data_->alpha_minus(s - t);
    }
    double initial(double s) const { return eval(s, 0.0); }
    const InitialData& data() const { return *data_; }

private:
    const InitialData* data_;
};

enum class ComponentClass { isolated, segment, region };
const char* to_string(ComponentClass c);

struct SingularPoint {
    double s, t;
    double beta_mod; // centered residual of beta against 2*pi*Z
    int component;
};

struct SingularComponent {
    int id;
    ComponentClass cls;
    double s_lo, s_hi, t_lo, t_hi; // bounding box of the grid mask
    int grid_count;                // flagged scan-grid points
};

struct SingularSet {
    std::vector<SingularPoint> points;
    std::vector<SingularComponent> components;
    // scan-grid cells flagged as touching K_sing (for region geometry)
    std::vector<std::pair<double, double>> grid_mask;
    double grid_step = 0.0;
    bool empty() const { return points.empty(); }
};

// Grid scan of beta mod 2*pi over the diamond, refined by bisection along
// both coordinates; components assembled by 8-neighbour adjacency.
SingularSet find_singular_set(const InitialData& data, const CharacteristicDiamond& d,
                              double grid_step);

struct SemicircleVerdict {
    bool guaranteed_singular;
    double oscillation;        // sup - inf of theta over [s1, s2]
    double witness_a, witness_b;
};
SemicircleVerdict semicircle_criterion(const InitialData& data, double s1, double s2);

struct RegularityVerdict {
    bool guaranteed_regular;
    double value; // osc(theta)^2 + sup|v|^2
};
RegularityVerdict no_singularity_criterion(const InitialData& data, double s1, double s2);

// Largest T such that |t| <= T is guaranteed free of K_sing, from the
// oscillation of theta and sup|v|; returns +infinity for straight data.
double short_time_horizon(const InitialData& data);

// e(s,t): continuous unit field from the mean of the alpha lifts.
Vec2 tangent_direction_e(const BetaField& beta, double s, double t);

// U = sgn(sin(beta/2)) e; empty near K_sing.
std::optional<Vec2> unit_tangent(const IsothermalSheet& sheet, const BetaField& beta,
                                 double s, double t);

struct SignChangeResult {
    double t_star;
    double s_negative, s_positive; // witnesses at the first grid hit
    std::vector<double> candidates;
};
// Earliest time in [t_lo, t_hi] at which sin(beta/2) takes both signs across
// the admissible s-range; empty when no such time exists on the scan.
std::optional<SignChangeResult> find_tangent_sign_change_time(const InitialData& data,
                                                              double t_lo, double t_hi,
                                                              int t_steps = 400,
                                                              int s_steps = 2048);

enum class TangentClass {
    c1_curve_with_tangent_extension,
    cusp_pair,
    degenerate_no_extension,
};
const char* to_string(TangentClass c);

struct TangentClassification {
    TangentClass cls;
    double r1, r2;  // zero set of the first sign-change structure
    long m = 0;     // odd multiple when the tangent extends
    double delta;   // alpha+(r1 + t0) - alpha+(r2 + t0)
};

// Classifies the first sign-change structure of sin(beta(.,t0)/2) inside
// [s_lo, s_hi]. Throws NoSignChange when sin(beta/2) does not change sign.
TangentClassification classify_tangent_discontinuity(const InitialData& data, double t0,
                                                     double s_lo, double s_hi);

} // namespace maxsheet
