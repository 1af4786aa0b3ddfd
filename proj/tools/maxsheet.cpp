// maxsheet: evolve planar curves with timelike velocity into timelike maximal
// surfaces via the d'Alembert representation in isothermal gauge, and analyse
// the singular set of the evolution.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <optional>

#include "maxsheet/curvature.hpp"
#include "maxsheet/embedding.hpp"
#include "maxsheet/errors.hpp"
#include "maxsheet/gallery.hpp"
#include "maxsheet/io.hpp"
#include "maxsheet/singularity.hpp"

using json = nlohmann::ordered_json;
using namespace maxsheet;

namespace {

json num(double v) {
    if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
    if (std::isnan(v)) return "nan";
    return v;
}

struct InputSpec {
    std::string gallery;
    double L = 0.0;
    std::string csv;
    double window = 20.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--gallery", gallery, "gallery entry name");
        cmd->add_option("--L", L, "length parameter for cigar / periodic_wedge");
        cmd->add_option("--curve", csv, "CSV file with columns s,c1,c2,v1,v2");
        cmd->add_option("--window", window, "truncation half-window for unbounded curves");
    }

    InitialData load(json& echo) const {
        echo["window"] = window;
        if (!gallery.empty()) {
            echo["gallery"] = gallery;
            if (L > 0.0) echo["L"] = L;
            return build_gallery(gallery, L).data;
        }
        if (!csv.empty()) {
            echo["curve"] = csv;
            SampledInput in = load_curve_csv(csv);
            NormalizeOptions opt;
            opt.window_lo = -window;
            opt.window_hi = window;
            opt.tol = Tolerances::sampled();
            return normalize_initial_data(in.curve, in.velocity, opt);
        }
        throw UsageError("need --gallery NAME or --curve FILE");
    }
};

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int run(int argc, char** argv) {
    CLI::App app{"timelike maximal surface evolution in isothermal gauge"};
    app.require_subcommand(1);

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "evaluate the evolved sheet on a grid");
    InputSpec evolve_in;
    evolve_in.attach(evolve_cmd);
    double ev_t0 = 0.0, ev_t1 = 1.0, ev_step = 0.1;
    double ev_s0 = 0.0, ev_s1 = 0.0;
    bool ev_s_set = false;
    std::string ev_obj, ev_csv;
    evolve_cmd->add_option("--t0", ev_t0, "first time");
    evolve_cmd->add_option("--t1", ev_t1, "last time");
    evolve_cmd->add_option("--step", ev_step, "grid step")->check(CLI::PositiveNumber);
    evolve_cmd->add_option("--s0", ev_s0, "first s");
    evolve_cmd->add_option("--s1", ev_s1, "last s");
    evolve_cmd->add_option("--obj", ev_obj, "write surface mesh OBJ here");
    evolve_cmd->add_option("--csv", ev_csv, "write grid CSV here");
    evolve_cmd->callback([&] { ev_s_set = evolve_cmd->count("--s0") || evolve_cmd->count("--s1"); });

    // singular
    auto* sing_cmd = app.add_subcommand("singular", "locate and classify the singular set");
    InputSpec sing_in;
    sing_in.attach(sing_cmd);
    std::vector<double> sing_diamond{-3.0, 3.0};
    double sing_step = 1e-2;
    std::string sing_csv;
    sing_cmd->add_option("--diamond", sing_diamond, "characteristic diamond s1 s2")
        ->expected(2);
    sing_cmd->add_option("--step", sing_step, "scan grid step")->check(CLI::PositiveNumber);
    sing_cmd->add_option("--csv", sing_csv, "write singular set CSV here");

    // curvature
    auto* curv_cmd = app.add_subcommand("curvature", "cross-section curvature analysis");
    InputSpec curv_in;
    curv_in.attach(curv_cmd);
    double cv_t0 = -1.0, cv_t1 = 1.0, cv_step = 0.1;
    double cv_s0 = -2.0, cv_s1 = 2.0;
    std::vector<double> cv_anchor;
    double cv_eps = 0.5;
    bool cv_norms = false;
    std::string cv_csv, cv_norm_csv;
    curv_cmd->add_option("--t0", cv_t0);
    curv_cmd->add_option("--t1", cv_t1);
    curv_cmd->add_option("--s0", cv_s0);
    curv_cmd->add_option("--s1", cv_s1);
    curv_cmd->add_option("--step", cv_step)->check(CLI::PositiveNumber);
    curv_cmd->add_option("--anchor", cv_anchor, "blow-up anchor s0 t0")->expected(2);
    curv_cmd->add_option("--eps", cv_eps, "blow-up window length");
    curv_cmd->add_flag("--norms", cv_norms, "classify mixed (p,q) norms (periodic data)");
    curv_cmd->add_option("--csv", cv_csv, "write curvature samples CSV here");
    curv_cmd->add_option("--norm-csv", cv_norm_csv, "write norm table CSV here");

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "separating direction and graph check");
    InputSpec embed_in;
    embed_in.attach(embed_cmd);
    std::vector<double> em_interval{-3.0, 3.0};
    embed_cmd->add_option("--interval", em_interval, "parameter interval s1 s2")->expected(2);

    // classify
    auto* class_cmd = app.add_subcommand("classify", "tangent discontinuity classification");
    InputSpec class_in;
    class_in.attach(class_cmd);
    double cl_t0 = 0.0;
    std::vector<double> cl_interval{-3.0, 3.0};
    std::vector<double> cl_trange;
    class_cmd->add_option("--t0", cl_t0, "classification time");
    class_cmd->add_option("--interval", cl_interval, "s interval")->expected(2);
    class_cmd->add_option("--t-range", cl_trange, "scan range for sign-change time")
        ->expected(2);

    // gallery
    auto* gal_cmd = app.add_subcommand("gallery", "build gallery entries, run regressions");
    std::string gal_name;
    double gal_L = 0.0;
    bool gal_check = false, gal_list = false;
    gal_cmd->add_option("name", gal_name, "entry name");
    gal_cmd->add_option("--L", gal_L, "length parameter");
    gal_cmd->add_flag("--check", gal_check, "run the regression suite");
    gal_cmd->add_flag("--list", gal_list, "list entry names");

    // horizon
    auto* hor_cmd = app.add_subcommand("horizon", "guaranteed short-time existence horizon");
    InputSpec hor_in;
    hor_in.attach(hor_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    json doc;
    json verdicts = json::object();
    json artifacts = json::array();
    double max_dev = 0.0;

    try {
        if (evolve_cmd->parsed()) {
            doc["command"] = "evolve";
            json echo;
            InitialData data = evolve_in.load(echo);
            echo["t0"] = ev_t0;
            echo["t1"] = ev_t1;
            echo["step"] = ev_step;
            IsothermalSheet sheet(data);
            if (!ev_s_set) {
                const double margin = std::max(std::fabs(ev_t0), std::fabs(ev_t1));
                if (data.periodic()) {
                    ev_s0 = data.window_lo();
                    ev_s1 = data.window_hi();
                } else {
                    ev_s0 = data.window_lo() + margin;
                    ev_s1 = data.window_hi() - margin;
                }
            }
            echo["s0"] = ev_s0;
            echo["s1"] = ev_s1;
            const int ns = std::max(2, static_cast<int>(std::round((ev_s1 - ev_s0) / ev_step)) + 1);
            const int nt = std::max(2, static_cast<int>(std::round((ev_t1 - ev_t0) / ev_step)) + 1);
            const auto s_grid = uniform_grid(ev_s0, ev_s1, ns);
            const auto t_grid = uniform_grid(ev_t0, ev_t1, nt);
            if (!ev_csv.empty()) {
                write_file(ev_csv, grid_csv(evaluate_grid(sheet, s_grid, t_grid)));
                artifacts.push_back(ev_csv);
            }
            if (!ev_obj.empty()) {
                const SurfaceMesh mesh = mesh_export(sheet, s_grid, t_grid);
                write_file(ev_obj, obj_text(mesh));
                artifacts.push_back(ev_obj);
                verdicts["vertices"] = mesh.vertices.size();
                verdicts["triangles"] = mesh.triangles.size();
            }
            verdicts["grid"] = {{"ns", ns}, {"nt", nt}};
            doc["config_echo"] = echo;
        } else if (sing_cmd->parsed()) {
            doc["command"] = "singular";
            json echo;
            InitialData data = sing_in.load(echo);
            echo["diamond"] = sing_diamond;
            echo["step"] = sing_step;
            const CharacteristicDiamond dia{sing_diamond[0], sing_diamond[1]};
            const SingularSet set = find_singular_set(data, dia, sing_step);
            if (!sing_csv.empty()) {
                write_file(sing_csv, singular_csv(set));
                artifacts.push_back(sing_csv);
            }
            verdicts["points"] = set.points.size();
            verdicts["components"] = json::array();
            for (const auto& c : set.components)
                verdicts["components"].push_back({{"id", c.id},
                                                  {"class", to_string(c.cls)},
                                                  {"grid_count", c.grid_count},
                                                  {"s_lo", num(c.s_lo)},
                                                  {"s_hi", num(c.s_hi)},
                                                  {"t_lo", num(c.t_lo)},
                                                  {"t_hi", num(c.t_hi)}});
            for (const auto& p : set.points)
                max_dev = std::max(max_dev, std::fabs(p.beta_mod));
            const auto semi = semicircle_criterion(data, dia.s1, dia.s2);
            verdicts["semicircle_criterion"] =
                semi.guaranteed_singular ? "guaranteed_singular" : "inconclusive";
            verdicts["theta_oscillation"] = num(semi.oscillation);
            const auto reg = no_singularity_criterion(data, dia.s1, dia.s2);
            verdicts["no_singularity_criterion"] =
                reg.guaranteed_regular ? "guaranteed_regular" : "inconclusive";
            doc["config_echo"] = echo;
        } else if (curv_cmd->parsed()) {
            doc["command"] = "curvature";
            json echo;
            InitialData data = curv_in.load(echo);
            IsothermalSheet sheet(data);
            const SheetView view = sheet.view();
            echo["s0"] = cv_s0;
            echo["s1"] = cv_s1;
            echo["t0"] = cv_t0;
            echo["t1"] = cv_t1;
            echo["step"] = cv_step;
            if (!cv_csv.empty()) {
                std::vector<CurvatureSample> rows;
                const int ns = std::max(2, static_cast<int>(std::round((cv_s1 - cv_s0) / cv_step)) + 1);
                const int nt = std::max(2, static_cast<int>(std::round((cv_t1 - cv_t0) / cv_step)) + 1);
                for (int j = 0; j < nt; ++j)
                    for (int i = 0; i < ns; ++i) {
                        const double s = cv_s0 + (cv_s1 - cv_s0) * i / (ns - 1);
                        const double t = cv_t0 + (cv_t1 - cv_t0) * j / (nt - 1);
                        CurvatureSample row{s, t, std::nan(""), std::nan(""), std::nan("")};
                        const auto k = cross_section_curvature(view, s, t, data.tol());
                        if (k.kappa_std) row.kappa_std = *k.kappa_std;
                        if (k.k_paper) row.k_paper = *k.k_paper;
                        try {
                            row.h = mean_curvature_scalar(view, s, t, data.tol());
                        } catch (const Error&) {
                        }
                        rows.push_back(row);
                    }
                write_file(cv_csv, curvature_csv(rows));
                artifacts.push_back(cv_csv);
            }
            if (cv_anchor.size() == 2) {
                const auto blow = blowup_integral(view, cv_anchor[0], cv_anchor[1], cv_eps,
                                                  default_window_sequence(cv_eps));
                verdicts["blowup"] = {{"divergent", blow.divergent},
                                      {"growth_min", num(blow.growth_min)},
                                      {"log_fit_r2", num(blow.log_fit_r2)}};
                json partials = json::array();
                for (size_t i = 0; i < blow.partials.size(); ++i)
                    partials.push_back({{"delta", num(blow.deltas[i])},
                                        {"integral", num(blow.partials[i])}});
                verdicts["blowup_partials"] = partials;
            }
            if (cv_norms) {
                // the first detected singular time bounds the norm window
                const SingularSet set = find_singular_set(
                    data, {data.window_lo(), data.window_hi()}, 1e-2);
                double tmin = std::numeric_limits<double>::infinity();
                for (const auto& p : set.points)
                    if (p.t > 1e-6) tmin = std::min(tmin, p.t);
                if (!std::isfinite(tmin))
                    throw NotSingularAnchor("norm table needs a singular time in the window");
                const std::vector<double> ps{1.1, 1.5, 2.0, 2.5, 3.0, 4.0};
                const std::vector<double> qs{1.1, 1.5, 2.0, 2.5, 3.0, 4.0};
                const auto table = mixed_norm_table(sheet, ps, qs, 0.0, tmin);
                if (!cv_norm_csv.empty()) {
                    write_file(cv_norm_csv, norm_table_csv(table));
                    artifacts.push_back(cv_norm_csv);
                }
                json jt = json::array();
                for (const auto& e : table)
                    jt.push_back({{"p", e.p},
                                  {"q", e.q},
                                  {"verdict", to_string(e.verdict)},
                                  {"last_value", num(e.last_value)}});
                verdicts["norm_table"] = jt;
            }
            doc["config_echo"] = echo;
        } else if (embed_cmd->parsed()) {
            doc["command"] = "embed";
            json echo;
            InitialData data = embed_in.load(echo);
            echo["interval"] = em_interval;
            const double s1 = em_interval[0], s2 = em_interval[1];
            const auto sep = separating_direction(data, s1, s2);
            verdicts["separation"] =
                sep.verdict == SeparationVerdict::separated ? "separated" : "overlapping";
            verdicts["margin"] = num(sep.margin);
            if (sep.verdict == SeparationVerdict::separated) {
                verdicts["omega"] = {num(sep.omega.x), num(sep.omega.y)};
                IsothermalSheet sheet(data);
                const auto graph = verify_graph_on_diamond(sheet, {s1, s2}, sep.omega);
                verdicts["graph"] = graph.is_graph;
                verdicts["graph_margin"] = num(graph.margin);
            } else {
                verdicts["witness"] = {{"xi", num(sep.witness_xi)},
                                       {"eta", num(sep.witness_eta)},
                                       {"gap", num(sep.witness_gap)}};
            }
            const auto hits = detect_self_intersections(data.curve_provider(), s1, s2);
            json jx = json::array();
            for (const auto& x : hits)
                jx.push_back({{"r1", num(x.r1)},
                              {"r2", num(x.r2)},
                              {"point", {num(x.point.x), num(x.point.y)}}});
            verdicts["self_intersections"] = jx;
            doc["config_echo"] = echo;
        } else if (class_cmd->parsed()) {
            doc["command"] = "classify";
            json echo;
            InitialData data = class_in.load(echo);
            echo["t0"] = cl_t0;
            echo["interval"] = cl_interval;
            if (cl_trange.size() == 2) {
                echo["t_range"] = cl_trange;
                const auto sc = find_tangent_sign_change_time(data, cl_trange[0], cl_trange[1]);
                if (sc) {
                    verdicts["sign_change"] = {{"t_star", num(sc->t_star)},
                                               {"s_negative", num(sc->s_negative)},
                                               {"s_positive", num(sc->s_positive)},
                                               {"candidates", sc->candidates.size()}};
                } else {
                    verdicts["sign_change"] = "not_found";
                }
            }
            try {
                const auto cls = classify_tangent_discontinuity(data, cl_t0, cl_interval[0],
                                                                cl_interval[1]);
                verdicts["classification"] = to_string(cls.cls);
                verdicts["r1"] = num(cls.r1);
                verdicts["r2"] = num(cls.r2);
                verdicts["m"] = cls.m;
                verdicts["delta_over_pi"] = num(cls.delta / kPi);
            } catch (const NoSignChange& e) {
                verdicts["classification"] = "no_sign_change";
                verdicts["detail"] = e.what();
            }
            doc["config_echo"] = echo;
        } else if (gal_cmd->parsed()) {
            doc["command"] = "gallery";
            json echo;
            if (gal_list || gal_name.empty()) {
                verdicts["entries"] = gallery_names();
            } else {
                echo["name"] = gal_name;
                if (gal_L > 0.0) echo["L"] = gal_L;
                GalleryEntry entry = build_gallery(gal_name, gal_L);
                verdicts["entry"] = entry.name;
                if (entry.param_L > 0.0) verdicts["L"] = num(entry.param_L);
                if (gal_check) {
                    const RegressionReport rep = run_regression(entry);
                    json checks = json::array();
                    for (const auto& c : rep.checks)
                        checks.push_back({{"name", c.name},
                                          {"deviation", num(c.deviation)},
                                          {"tolerance", num(c.tolerance)},
                                          {"pass", c.pass}});
                    verdicts["checks"] = checks;
                    verdicts["pass"] = rep.pass;
                    max_dev = rep.max_deviation;
                }
            }
            doc["config_echo"] = echo;
        } else if (hor_cmd->parsed()) {
            doc["command"] = "horizon";
            json echo;
            InitialData data = hor_in.load(echo);
            const double T = short_time_horizon(data);
            verdicts["horizon"] = num(T);
            doc["config_echo"] = echo;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        doc["verdicts"] = verdicts;
        doc["error"] = e.what();
        emit(doc);
        return 1;
    }

    doc["verdicts"] = verdicts;
    doc["artifacts"] = artifacts;
    doc["max_deviation"] = num(max_dev);
    emit(doc);
    return 0;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
