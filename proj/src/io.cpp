#include "maxsheet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "maxsheet/errors.hpp"

namespace maxsheet {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string obj_text(const SurfaceMesh& mesh) {
    std::string out;
    out.reserve(mesh.vertices.size() * 32 + mesh.triangles.size() * 16);
    for (const auto& v : mesh.vertices) {
        out += "v ";
        out += format_double(v[0]);
        out += ' ';
        out += format_double(v[1]);
        out += ' ';
        out += format_double(v[2]);
        out += '\n';
    }
    for (const auto& f : mesh.triangles) {
        out += "f ";
        out += std::to_string(f[0] + 1);
        out += ' ';
        out += std::to_string(f[1] + 1);
        out += ' ';
        out += std::to_string(f[2] + 1);
        out += '\n';
    }
    return out;
}

std::string grid_csv(const GridResult& grid) {
    std::string out = "s,t,g1,g2,gs1,gs2,gt1,gt2\n";
    for (size_t it = 0; it < grid.t_grid.size(); ++it)
        for (size_t is = 0; is < grid.s_grid.size(); ++is) {
            const GridSample& g = grid.at(static_cast<int>(is), static_cast<int>(it));
            out += format_double(grid.s_grid[is]);
            out += ',';
            out += format_double(grid.t_grid[it]);
            for (double v : {g.gamma.x, g.gamma.y, g.gamma_s.x, g.gamma_s.y, g.gamma_t.x,
                             g.gamma_t.y}) {
                out += ',';
                out += format_double(v);
            }
            out += '\n';
        }
    return out;
}

std::string singular_csv(const SingularSet& set) {
    std::string out = "s,t,beta_mod_2pi,component_id,class\n";
    for (const auto& p : set.points) {
        const SingularComponent* comp = nullptr;
        for (const auto& c : set.components)
            if (c.id == p.component) comp = &c;
        out += format_double(p.s);
        out += ',';
        out += format_double(p.t);
        out += ',';
        out += format_double(p.beta_mod);
        out += ',';
        out += std::to_string(p.component);
        out += ',';
        out += comp ? to_string(comp->cls) : "?";
        out += '\n';
    }
    return out;
}

std::string curvature_csv(const std::vector<CurvatureSample>& samples) {
    std::string out = "s,t,kappa_std,k_paper,h\n";
    for (const auto& r : samples) {
        out += format_double(r.s);
        out += ',';
        out += format_double(r.t);
        out += ',';
        out += format_double(r.kappa_std);
        out += ',';
        out += format_double(r.k_paper);
        out += ',';
        out += format_double(r.h);
        out += '\n';
    }
    return out;
}

std::string norm_table_csv(const std::vector<NormTableEntry>& table) {
    std::string out = "p,q,verdict,last_truncation_value\n";
    for (const auto& e : table) {
        out += format_double(e.p);
        out += ',';
        out += format_double(e.q);
        out += ',';
        out += to_string(e.verdict);
        out += ',';
        out += format_double(e.last_value);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

} // namespace maxsheet
