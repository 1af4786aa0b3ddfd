#pragma once

#include <string>
#include <vector>

#include "maxsheet/curvature.hpp"
#include "maxsheet/sheet.hpp"
#include "maxsheet/singularity.hpp"

namespace maxsheet {

// shortest decimal representation that round-trips to the same double
std::string format_double(double v);

// OBJ text: `v x y z` lines then 1-indexed `f i j k` lines, LF endings.
std::string obj_text(const SurfaceMesh& mesh);

// grid CSV: header s,t,g1,g2,gs1,gs2,gt1,gt2 (row-major, s fastest)
std::string grid_csv(const GridResult& grid);

// singular set CSV: s,t,beta_mod_2pi,component_id,class
std::string singular_csv(const SingularSet& set);

struct CurvatureSample {
    double s, t;
    double kappa_std, k_paper, h; // NaN where undefined
};
// curvature CSV: s,t,kappa_std,k_paper,h
std::string curvature_csv(const std::vector<CurvatureSample>& samples);

// norm table CSV: p,q,verdict,last_truncation_value
std::string norm_table_csv(const std::vector<NormTableEntry>& table);

void write_file(const std::string& path, const std::string& content);

} // namespace maxsheet
