#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "maxsheet/initial_data.hpp"

namespace maxsheet {

// One worked construction with its exact reference data.
struct GalleryEntry {
    GalleryEntry(std::string n, InitialData d, double L = 0.0)
        : name(std::move(n)), data(std::move(d)), param_L(L) {}

    std::string name;
    InitialData data;
    double param_L = 0.0; // cigar / periodic_wedge parameter

    // closed-form references; empty std::function when not available
    std::function<Vec2(double, double)> gamma_ref;
    std::function<bool(double, double)> ksing_member;
    bool ksing_known_empty = false;
    std::function<double(double, double)> kappa_abs_ref; // |kappa_std|(s,t)
    double first_singular_time = std::numeric_limits<double>::infinity();

    // recommended scan ranges for regression
    double scan_s1 = -3.0, scan_s2 = 3.0;
};

std::vector<std::string> gallery_names();

// Builds a gallery entry by name; L applies to cigar and periodic_wedge
// (0 selects the default: pi/4 resp. pi). Throws UnknownName.
GalleryEntry build_gallery(const std::string& name, double L = 0.0);

struct RegressionCheck {
    std::string name;
    double deviation;
    double tolerance;
    bool pass;
};

struct RegressionReport {
    std::string entry;
    std::vector<RegressionCheck> checks;
    double max_deviation = 0.0;
    bool pass = true;
};

// Compares every computable quantity of the entry against its references.
RegressionReport run_regression(const GalleryEntry& entry);

// Synthetic smooth data from random Fourier profiles for theta and mu;
// deterministic in the seed. Used by the property suites.
InitialData random_smooth_data(unsigned seed, double window = 8.0);

} // namespace maxsheet
