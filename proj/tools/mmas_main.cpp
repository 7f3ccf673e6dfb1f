#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmas/analysis.hpp"
#include "mmas/svg.hpp"
#include "mmas/trace_io.hpp"
#include "mmas/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mmas::ConfigError("cannot write " + path.string());
    out << content;
}

std::string load_config_or_default(const std::string& config_path) {
    if (config_path.empty()) return "{\"schema_version\": 1}";
    return mmas::read_text_file(config_path);
}

json direction_table(const mmas::MonotonicityReport& rep,
                     const std::vector<std::string>& param_names) {
    json table = json::array();
    for (int l = 0; l < rep.k; ++l) {
        json rows = json::array();
        for (int i = 0; i < rep.n; ++i) {
            json row = json::array();
            for (int j = 0; j < rep.n; ++j) row.push_back(mmas::to_string(rep.at(l, i, j)));
            rows.push_back(row);
        }
        table.push_back({{"param", param_names[static_cast<size_t>(l)]}, {"directions", rows}});
    }
    return table;
}

json verdict_json(const mmas::ConditionVerdict& v) {
    return {{"holds", v.holds}, {"residual", v.residual}};
}

int cmd_analyze(const std::string& config_path, const std::string& out_dir,
                std::optional<std::uint64_t> seed_flag, std::optional<std::string> system_flag,
                bool standard_sign_flag) {
    mmas::AnalyzeConfig cfg = mmas::parse_analyze_config(load_config_or_default(config_path));
    if (seed_flag) cfg.analysis.seed = *seed_flag;
    if (system_flag) cfg.system = *system_flag;
    if (standard_sign_flag) cfg.standard_sign = true;

    const mmas::NamedSystem ns = mmas::make_named_system(
        cfg.system, cfg.standard_sign ? mmas::SignConvention::Standard
                                      : mmas::SignConvention::AsPrinted,
        cfg.speed_mps);
    const mmas::AnalysisResult res = mmas::analyze_system(ns, cfg.analysis);

    json report;
    report["command"] = "analyze";
    report["system"] = cfg.system;
    report["seed"] = cfg.analysis.seed;
    report["grid"] = cfg.analysis.grid;
    report["cross_sections"] = cfg.analysis.cross_sections;
    report["tol"] = cfg.analysis.tol;
    report["standard_sign"] = cfg.standard_sign;
    report["monotone"] = res.report.all_monotone();
    report["scan_slack"] = res.report.slack;
    report["directions"] = direction_table(res.report, ns.system.box.names);

    std::cout << "analyze: system=" << cfg.system << " seed=" << cfg.analysis.seed
              << " grid=" << cfg.analysis.grid << "\n";

    if (!res.report.all_monotone()) {
        json witnesses = json::array();
        for (const auto& w : res.report.witnesses) {
            witnesses.push_back({{"param", ns.system.box.names[static_cast<size_t>(w.param)]},
                                 {"row", w.row},
                                 {"col", w.col},
                                 {"rise_at", std::vector<double>(w.rise_at.data(),
                                                                 w.rise_at.data() + w.rise_at.size())},
                                 {"fall_at", std::vector<double>(w.fall_at.data(),
                                                                 w.fall_at.data() + w.fall_at.size())}});
        }
        report["witnesses"] = witnesses;
        std::cout << "non-monotone entries detected: " << res.report.witnesses.size() << "\n";
        for (const auto& w : res.report.witnesses) {
            std::cout << "  entry (" << w.row << "," << w.col << ") vs "
                      << ns.system.box.names[static_cast<size_t>(w.param)]
                      << ": witness m_l rising at " << w.rise_at[w.param] << ", falling at "
                      << w.fall_at[w.param] << "\n";
        }
        std::cout << "vertex selection skipped (non-monotone entries present)\n";
    } else {
        const mmas::VertexModelSet& vm = *res.models;
        json corners = json::array();
        for (const auto& c : vm.corners) corners.push_back(c.to_string());
        report["selected_corners"] = corners;
        report["model_count"] = vm.count();
        report["paper_target_model_count"] = res.paper_target_count;
        if (vm.count() != res.paper_target_count) {
            report["count_discrepancy"] =
                "selected count differs from the recorded reduction target: the extremal "
                "templates need more boundary sign patterns than the target covers";
        } else {
            report["count_discrepancy"] = nullptr;
        }
        json coverage = json::array();
        for (const auto& [key, corner_idx] : vm.coverage) {
            coverage.push_back({{"entry", {key.first / res.report.n, key.first % res.report.n}},
                                {"extreme", key.second ? "max" : "min"},
                                {"corner", vm.corners[static_cast<size_t>(corner_idx)].to_string()}});
        }
        report["coverage"] = coverage;
        report["hull_coverage"] = {{"samples", res.coverage_samples},
                                   {"residual_tol", cfg.analysis.coverage_residual_tol},
                                   {"fraction", res.hull_coverage},
                                   {"observed_row", res.observed_row}};

        std::cout << "all entries monotone per parameter\n";
        std::cout << "selected model count: " << vm.count()
                  << " (recorded reduction target: " << res.paper_target_count << ")\n";
        if (vm.count() != res.paper_target_count)
            std::cout << "  discrepancy: reported, not silently accepted — see report JSON\n";
        std::cout << "selected corners (order " << [&] {
            std::string names;
            for (const auto& nm : ns.system.box.names) names += nm + " ";
            return names;
        }() << "):\n";
        for (const auto& c : vm.corners) std::cout << "  " << c.to_string() << "\n";
        if (res.coverage_samples > 0) {
            std::cout << "hull coverage (observed row " << res.observed_row << ", "
                      << res.coverage_samples << " samples, residual tol "
                      << cfg.analysis.coverage_residual_tol << "): " << res.hull_coverage << "\n";
        }
    }

    json coord = json::array();
    for (const auto& pair : cfg.coordination_pairs) {
        const auto v = mmas::check_coordination(ns.system, pair[0], {pair[1], pair[2]},
                                                {pair[3], pair[4]},
                                                std::max(5, cfg.analysis.grid), cfg.analysis.tol);
        coord.push_back({{"param", ns.system.box.names[static_cast<size_t>(pair[0])]},
                         {"entry_a", {pair[1], pair[2]}},
                         {"entry_b", {pair[3], pair[4]}},
                         {"affine", verdict_json(v.affine)},
                         {"alpha", v.alpha},
                         {"beta", v.beta},
                         {"functional", verdict_json(v.functional)},
                         {"symmetry", verdict_json(v.symmetry)},
                         {"symmetry_center", v.symmetry_center},
                         {"critical_points", verdict_json(v.critical_points)},
                         {"periodic", "NOT_CHECKED"}});
        std::cout << "coordination (" << pair[1] << "," << pair[2] << ")/(" << pair[3] << ","
                  << pair[4] << ") vs " << ns.system.box.names[static_cast<size_t>(pair[0])]
                  << ": affine=" << (v.affine.holds ? "yes" : "no")
                  << " functional=" << (v.functional.holds ? "yes" : "no")
                  << " symmetry=" << (v.symmetry.holds ? "yes" : "no")
                  << " critical=" << (v.critical_points.holds ? "yes" : "no")
                  << " periodic=NOT_CHECKED\n";
    }
    report["coordination"] = coord;

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "analyze_report.json", report.dump(2) + "\n");
    std::cout << "report written to " << (fs::path(out_dir) / "analyze_report.json").string()
              << "\n";
    return kExitOk;
}

int cmd_bounds(const std::string& config_path, const std::string& out_dir,
               std::optional<std::uint64_t> seed_flag, std::optional<int> samples_flag,
               bool literal_flag) {
    mmas::BoundsConfig cfg = mmas::parse_bounds_config(load_config_or_default(config_path));
    if (seed_flag) cfg.analysis.seed = *seed_flag;
    if (samples_flag) cfg.samples = *samples_flag;
    if (literal_flag) cfg.literal_paper_bounds = true;

    mmas::BoundsOptions opts;
    opts.literal_paper_products = cfg.literal_paper_bounds;

    std::optional<mmas::MatrixInterval> interval;
    if (cfg.explicit_lb) {
        interval.emplace(*cfg.explicit_lb, *cfg.explicit_ub);
    } else {
        const mmas::NamedSystem ns = mmas::make_named_system(
            cfg.system, cfg.standard_sign ? mmas::SignConvention::Standard
                                          : mmas::SignConvention::AsPrinted,
            cfg.speed_mps);
        const auto rep = mmas::scan_monotonicity(ns.system, cfg.analysis.grid,
                                                 cfg.analysis.cross_sections, cfg.analysis.tol,
                                                 cfg.analysis.seed);
        interval.emplace(mmas::element_bounds(ns.system, rep));
    }

    const mmas::BoundsResult res =
        mmas::bounds_with_sampling(*interval, cfg.samples, cfg.analysis.seed ^ 0xb0add5, opts);

    json report;
    report["command"] = "bounds";
    report["source"] = cfg.explicit_lb ? "explicit_interval" : cfg.system;
    report["n"] = interval->n();
    report["literal_paper_bounds"] = cfg.literal_paper_bounds;
    report["samples"] = res.samples;
    report["violations"] = res.violations;
    report["seed"] = cfg.analysis.seed;

    json coeffs = json::array();
    std::cout << "bounds: n=" << interval->n() << " samples=" << res.samples
              << (cfg.literal_paper_bounds ? " (literal endpoint-product mode)" : "") << "\n";
    std::cout << "  k          lb                ub        sampled_min        sampled_max\n";
    for (int k = 0; k < interval->n(); ++k) {
        const double slack_lower = res.sampled_min[k] - res.bounds.lb[k];
        const double slack_upper = res.bounds.ub[k] - res.sampled_max[k];
        coeffs.push_back({{"k", k},
                          {"lb", res.bounds.lb[k]},
                          {"ub", res.bounds.ub[k]},
                          {"sampled_min", res.sampled_min[k]},
                          {"sampled_max", res.sampled_max[k]},
                          {"slack_lower", slack_lower},
                          {"slack_upper", slack_upper}});
        char line[200];
        std::snprintf(line, sizeof line, "  c_%-2d %12.6g %16.6g %16.6g %18.6g\n", k,
                      res.bounds.lb[k], res.bounds.ub[k], res.sampled_min[k], res.sampled_max[k]);
        std::cout << line;
    }
    report["coefficients"] = coeffs;

    json lbj = json::array(), ubj = json::array();
    for (int i = 0; i < interval->n(); ++i) {
        json lr = json::array(), ur = json::array();
        for (int j = 0; j < interval->n(); ++j) {
            lr.push_back(interval->lb(i, j));
            ur.push_back(interval->ub(i, j));
        }
        lbj.push_back(lr);
        ubj.push_back(ur);
    }
    report["element_interval"] = {{"lb", lbj}, {"ub", ubj}};

    std::cout << "containment violations: " << res.violations << "\n";
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "bounds_report.json", report.dump(2) + "\n");
    std::cout << "report written to " << (fs::path(out_dir) / "bounds_report.json").string()
              << "\n";
    return res.violations == 0 ? kExitOk : kExitFailure;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_flag) {
    mmas::SimulateConfig cfg;
    if (config_path.empty()) {
        cfg.scenario = mmas::default_scenario();
    } else {
        cfg = mmas::parse_simulate_config(mmas::read_text_file(config_path));
    }
    if (seed_flag) {
        cfg.scenario.seed = *seed_flag;
        cfg.analysis.seed = *seed_flag;
    }

    const mmas::NamedSystem ns = mmas::make_named_system("vehicle", cfg.scenario.signs,
                                                         cfg.scenario.speed_mps);
    mmas::AnalysisOptions aopts = cfg.analysis;
    aopts.coverage_samples = 0;
    const mmas::AnalysisResult analysis = mmas::analyze_system(ns, aopts);
    if (!analysis.models) {
        std::cerr << "simulate: vehicle analysis unexpectedly found non-monotone entries\n";
        return kExitFailure;
    }
    const mmas::SimulationTrace tr = mmas::simulate_scenario(cfg.scenario, *analysis.models);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    mmas::write_trace_csv_file((dir / "trace.csv").string(), tr);

    const char* state_names[4] = {"beta", "r", "phi", "phidot"};
    for (int j = 0; j < tr.n; ++j) {
        std::vector<mmas::SvgSeries> series(2);
        series[0].label = std::string(state_names[j]) + " (plant)";
        series[1].label = std::string(state_names[j]) + " (estimate)";
        series[0].y.assign(tr.plant_states.col(j).data(),
                           tr.plant_states.col(j).data() + tr.plant_states.rows());
        series[1].y.resize(static_cast<size_t>(tr.estimates.rows()));
        for (int r = 0; r < tr.estimates.rows(); ++r)
            series[1].y[static_cast<size_t>(r)] = tr.estimates(r, j);
        mmas::write_line_svg((dir / (std::string(state_names[j]) + ".svg")).string(),
                             std::string("vehicle ") + state_names[j] + ": truth vs estimate",
                             tr.t, series);
    }
    {
        std::vector<mmas::SvgSeries> series(static_cast<size_t>(tr.N));
        for (int i = 0; i < tr.N; ++i) {
            series[static_cast<size_t>(i)].label = "w_" + std::to_string(i + 1);
            series[static_cast<size_t>(i)].y.resize(static_cast<size_t>(tr.weights.rows()));
            for (int r = 0; r < tr.weights.rows(); ++r)
                series[static_cast<size_t>(i)].y[static_cast<size_t>(r)] = tr.weights(r, i);
        }
        mmas::write_line_svg((dir / "weights.svg").string(), "model weights", tr.t, series);
    }
    mmas::write_inclusion_svg((dir / "inclusion.svg").string(), tr.t, tr.inclusion);

    int counts[3] = {0, 0, 0};
    for (const auto v : tr.inclusion) ++counts[static_cast<int>(v)];
    double max_rel_residual = 0.0;
    for (size_t i = 0; i < tr.weight_residual.size(); ++i)
        if (tr.error_scale[i] > 0.0)
            max_rel_residual = std::max(max_rel_residual, tr.weight_residual[i] / tr.error_scale[i]);

    json report;
    report["command"] = "simulate";
    report["seed"] = cfg.scenario.seed;
    report["steps"] = tr.steps();
    report["models"] = tr.N;
    report["diverged"] = tr.diverged;
    if (tr.diverged) report["diverged_at"] = tr.diverged_at;
    report["verdict_counts"] = {{"INSIDE", counts[0]}, {"OUTSIDE", counts[1]},
                                {"BOUNDARY", counts[2]}};
    report["max_weight_residual_rel"] = max_rel_residual;
    json fw = json::array();
    for (int i = 0; i < tr.N; ++i) fw.push_back(tr.weights(tr.weights.rows() - 1, i));
    report["final_weights"] = fw;
    json outputs = json::array({"trace.csv", "beta.svg", "r.svg", "phi.svg", "phidot.svg",
                                "weights.svg", "inclusion.svg"});
    report["outputs"] = outputs;
    write_file(dir / "simulate_report.json", report.dump(2) + "\n");

    std::cout << "simulate: " << tr.steps() << " steps, " << tr.N << " models\n";
    std::cout << "verdicts: INSIDE=" << counts[0] << " OUTSIDE=" << counts[1]
              << " BOUNDARY=" << counts[2] << "\n";
    std::cout << "outputs in " << out_dir << "\n";
    if (tr.diverged) {
        std::cerr << "simulation diverged at t=" << tr.diverged_at
                  << " s; partial trace flushed\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_verify(const std::string& config_path, const std::string& out_dir,
               std::optional<std::uint64_t> seed_flag, bool smoke_flag) {
    mmas::VerifyConfig cfg = mmas::parse_verify_config(load_config_or_default(config_path));
    if (seed_flag) cfg.seed = *seed_flag;
    if (smoke_flag) cfg.smoke = true;

    const mmas::VerifyReport report = mmas::run_verify(cfg.seed, cfg.smoke);
    std::cout << report.text();

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "verify_report.txt", report.text());
    write_file(fs::path(out_dir) / "verify_report.json", report.json_text());
    return report.all_passed() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-model adaptive estimation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "seed override");
    };

    auto* analyze = app.add_subcommand("analyze", "monotonicity scan and vertex-model selection");
    std::optional<std::string> system_flag;
    bool standard_sign = false;
    add_common(analyze);
    analyze->add_option("--system", system_flag, "built-in system name");
    analyze->add_flag("--standard-sign", standard_sign, "standard-sign vehicle variant");

    auto* bounds = app.add_subcommand("bounds", "characteristic-coefficient interval bounds");
    std::optional<int> samples_flag;
    bool literal = false;
    add_common(bounds);
    bounds->add_option("--samples", samples_flag, "sampling-oracle draws");
    bounds->add_flag("--literal-paper-bounds", literal,
                     "use the naive endpoint-product permutation bounds");

    auto* simulate = app.add_subcommand("simulate", "vehicle estimation scenario");
    add_common(simulate);

    auto* verify = app.add_subcommand("verify", "run every property suite");
    bool smoke = false;
    add_common(verify);
    verify->add_flag("--smoke", smoke, "reduced sample counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze))
            return cmd_analyze(config_path, out_dir, seed, system_flag, standard_sign);
        if (app.got_subcommand(bounds))
            return cmd_bounds(config_path, out_dir, seed, samples_flag, literal);
        if (app.got_subcommand(simulate)) return cmd_simulate(config_path, out_dir, seed);
        if (app.got_subcommand(verify)) return cmd_verify(config_path, out_dir, seed, smoke);
    } catch (const mmas::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitConfigError;
}
