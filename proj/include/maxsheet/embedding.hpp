#pragma once

#include <optional>
#include <vector>

#include "maxsheet/initial_data.hpp"
#include "maxsheet/sheet.hpp"
#include "maxsheet/singularity.hpp"

namespace maxsheet {

enum class SeparationVerdict { separated, overlapping };

struct SeparationResult {
    SeparationVerdict verdict;
    Vec2 omega{0.0, 0.0};      // separating direction when separated
    double omega_angle = 0.0;
    double margin = 0.0;       // min <a+(xi) - a-(eta), omega> over the scan
    double arc_lo = 0.0, arc_hi = 0.0; // alpha+ arc over [s1, s2]
    double witness_xi = 0.0, witness_eta = 0.0; // a+(xi) ~ a-(eta) when overlapping
    double witness_gap = 0.0;  // |a+(xi) - a-(eta)| at the witness
};

// Arc-midpoint separating direction of the null images over [s1, s2], with a
// numerical margin; on failure locates an overlap witness.
SeparationResult separating_direction(const InitialData& data, double s1, double s2);

struct GraphVerdict {
    bool is_graph;
    double margin;      // min <gamma_s, omega> over the diamond grid
    double min_s, min_t;
};

// Checks <gamma_s, omega> > 0 over the diamond and per-slice monotonicity of
// <gamma, omega>. Throws MarginViolated when a grid value is non-positive.
GraphVerdict verify_graph_on_diamond(const IsothermalSheet& sheet,
                                     const CharacteristicDiamond& diamond, Vec2 omega,
                                     int n = 400);

struct Intersection {
    double r1, r2;
    Vec2 point;
};

// Self-intersections of the curve over [s_lo, s_hi]: spatial-hash broad phase
// on the sampled polyline, Newton refinement, trivial and periodic-duplicate
// matches excluded.
std::vector<Intersection> detect_self_intersections(const CurveProvider& curve,
                                                    double s_lo, double s_hi,
                                                    int samples = 4096,
                                                    double tau = 1e-9);

} // namespace maxsheet
