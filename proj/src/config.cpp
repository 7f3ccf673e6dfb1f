#include "mmas/config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mmas/errors.hpp"

namespace mmas {

namespace {

using nlohmann::json;

// Tracks consumed keys so unknown fields are rejected with their path.
class Fields {
  public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + ": expected a JSON object");
    }

    bool has(const std::string& key) {
        return j_.contains(key);
    }

    template <typename T>
    T get(const std::string& key, const T& fallback) {
        if (!j_.contains(key)) return fallback;
        consumed_.insert(key);
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(path_ + "." + key + ": " + e.what());
        }
    }

    template <typename T>
    T require(const std::string& key) {
        if (!j_.contains(key)) throw ConfigError(path_ + "." + key + ": missing required field");
        consumed_.insert(key);
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(path_ + "." + key + ": " + e.what());
        }
    }

    const json* child(const std::string& key) {
        if (!j_.contains(key)) return nullptr;
        consumed_.insert(key);
        return &j_.at(key);
    }

    std::string path() const { return path_; }

    void done() {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!consumed_.count(it.key()))
                throw ConfigError(path_ + "." + it.key() + ": unknown field");
        }
    }

  private:
    const json& j_;
    std::string path_;
    std::set<std::string> consumed_;
};

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

void check_schema(Fields& f) {
    const int version = f.get<int>("schema_version", -1);
    if (version != 1) throw ConfigError(f.path() + ".schema_version: must be present and equal 1");
}

AnalysisOptions parse_analysis(const json* j, const std::string& path) {
    AnalysisOptions a;
    if (!j) return a;
    Fields f(*j, path);
    a.grid = f.get<int>("grid", a.grid);
    a.cross_sections = f.get<int>("cross_sections", a.cross_sections);
    a.tol = f.get<double>("tol", a.tol);
    a.seed = f.get<std::uint64_t>("seed", a.seed);
    a.coverage_samples = f.get<int>("coverage_samples", a.coverage_samples);
    a.coverage_residual_tol = f.get<double>("coverage_residual_tol", a.coverage_residual_tol);
    f.done();
    return a;
}

ParamTrajectory parse_trajectory(const json& j, const std::string& path, double nominal) {
    Fields f(j, path);
    const std::string type = f.get<std::string>("type", "constant");
    ParamTrajectory tr;
    if (type == "constant") {
        tr.kind = ParamTrajectory::Kind::Constant;
        tr.value = f.get<double>("value", nominal);
    } else if (type == "sinusoid") {
        tr.kind = ParamTrajectory::Kind::Sinusoid;
        tr.center = f.get<double>("center", nominal);
        tr.amplitude = f.get<double>("amplitude", 0.0);
        tr.frequency_hz = f.get<double>("frequency_hz", 0.2);
        tr.phase = f.get<double>("phase", 0.0);
    } else if (type == "piecewise") {
        tr.kind = ParamTrajectory::Kind::Piecewise;
        tr.times = f.get<std::vector<double>>("times", {});
        tr.values = f.get<std::vector<double>>("values", {});
        if (tr.values.empty() || tr.times.size() != tr.values.size())
            throw ConfigError(path + ": times and values must be equal-length, non-empty");
    } else {
        throw ConfigError(path + ".type: unknown trajectory type '" + type + "'");
    }
    f.done();
    return tr;
}

VehicleParams parse_vehicle_overrides(const json* j, const std::string& path) {
    VehicleParams vp;
    if (!j) return vp;
    Fields f(*j, path);
    vp.m = f.get<double>("m", vp.m);
    vp.m_s = f.get<double>("m_s", vp.m_s);
    vp.I_z = f.get<double>("I_z", vp.I_z);
    vp.I_xs = f.get<double>("I_xs", vp.I_xs);
    vp.l_f = f.get<double>("l_f", vp.l_f);
    vp.l_r = f.get<double>("l_r", vp.l_r);
    vp.h_s = f.get<double>("h_s", vp.h_s);
    vp.C_af = f.get<double>("C_af", vp.C_af);
    vp.C_ar = f.get<double>("C_ar", vp.C_ar);
    vp.k_phi = f.get<double>("k_phi", vp.k_phi);
    vp.c_phi = f.get<double>("c_phi", vp.c_phi);
    vp.phi_r = f.get<double>("phi_r", vp.phi_r);
    vp.theta_r = f.get<double>("theta_r", vp.theta_r);
    f.done();
    return vp;
}

Scenario parse_scenario(Fields& f) {
    Scenario sc;
    sc.nominal = parse_vehicle_overrides(f.child("vehicle"), f.path() + ".vehicle");
    sc.speed_mps = f.get<double>("speed_mps", sc.speed_mps);
    sc.horizon_s = f.get<double>("horizon_s", sc.horizon_s);
    sc.step_s = f.get<double>("step_s", sc.step_s);
    sc.seed = f.get<std::uint64_t>("seed", sc.seed);
    sc.signs = f.get<bool>("standard_sign", false) ? SignConvention::Standard
                                                   : SignConvention::AsPrinted;

    if (const json* j = f.child("steering")) {
        Fields s(*j, f.path() + ".steering");
        const std::string type = s.get<std::string>("type", "sine");
        if (type == "sine")
            sc.steering.kind = SteeringProfile::Kind::Sine;
        else if (type == "step")
            sc.steering.kind = SteeringProfile::Kind::Step;
        else if (type == "swept_sine")
            sc.steering.kind = SteeringProfile::Kind::SweptSine;
        else
            throw ConfigError(f.path() + ".steering.type: unknown profile '" + type + "'");
        sc.steering.amplitude_rad =
            s.get<double>("amplitude_deg", 2.0) * std::numbers::pi / 180.0;
        sc.steering.frequency_hz = s.get<double>("frequency_hz", sc.steering.frequency_hz);
        sc.steering.frequency_end_hz =
            s.get<double>("frequency_end_hz", sc.steering.frequency_end_hz);
        sc.steering.step_time_s = s.get<double>("step_time_s", sc.steering.step_time_s);
        s.done();
    }

    // Default schedule: constants at the nominal values.
    const std::array<const char*, 6> names = {"C_af", "C_ar", "k_phi", "c_phi", "phi_r", "theta_r"};
    const std::array<double, 6> nominals = {sc.nominal.C_af, sc.nominal.C_ar, sc.nominal.k_phi,
                                            sc.nominal.c_phi, sc.nominal.phi_r, sc.nominal.theta_r};
    sc.plant.kind = PlantSpec::Kind::Schedule;
    sc.plant.schedule.clear();
    for (double v : nominals) sc.plant.schedule.push_back(ParamTrajectory::constant(v));

    if (const json* j = f.child("plant")) {
        Fields p(*j, f.path() + ".plant");
        const std::string mode = p.get<std::string>("mode", "schedule");
        if (mode == "schedule") {
            if (const json* js = p.child("schedule")) {
                Fields sched(*js, f.path() + ".plant.schedule");
                for (size_t i = 0; i < names.size(); ++i) {
                    if (const json* jt = sched.child(names[i]))
                        sc.plant.schedule[i] = parse_trajectory(
                            *jt, f.path() + ".plant.schedule." + names[i], nominals[i]);
                }
                sched.done();
            }
        } else if (mode == "convex_combo") {
            sc.plant.kind = PlantSpec::Kind::ConvexCombo;
            const auto w = p.require<std::vector<double>>("weights");
            sc.plant.combo_weights = Eigen::Map<const Vector>(w.data(),
                                                              static_cast<Eigen::Index>(w.size()));
        } else {
            throw ConfigError(f.path() + ".plant.mode: unknown mode '" + mode + "'");
        }
        p.done();
    }

    if (const json* j = f.child("estimator")) {
        Fields e(*j, f.path() + ".estimator");
        sc.estimator.lambda = e.get<double>("lambda", sc.estimator.lambda);
        sc.estimator.refinements = e.get<int>("refinements", sc.estimator.refinements);
        sc.estimator.deadband_factor =
            e.get<double>("deadband_factor", sc.estimator.deadband_factor);
        sc.estimator.identifier_decay =
            e.get<double>("identifier_decay", sc.estimator.identifier_decay);
        const std::string mode = e.get<std::string>("identifier_mode", "shared_state");
        if (mode == "shared_state")
            sc.estimator.identifier_mode = IdentifierMode::SharedState;
        else if (mode == "parallel")
            sc.estimator.identifier_mode = IdentifierMode::Parallel;
        else
            throw ConfigError(f.path() + ".estimator.identifier_mode: unknown mode '" + mode + "'");
        sc.estimator.observed_channel =
            e.get<int>("observed_channel", sc.estimator.observed_channel);
        e.done();
    }

    if (const json* j = f.child("disturbance")) {
        Fields d(*j, f.path() + ".disturbance");
        sc.disturbance_amplitude = d.get<double>("amplitude", 0.0);
        sc.disturbance_frequency_hz = d.get<double>("frequency_hz", 1.0);
        d.done();
    }
    return sc;
}

}  // namespace

AnalyzeConfig parse_analyze_config(const std::string& json_text) {
    const json j = parse_text(json_text);
    Fields f(j, "analyze");
    check_schema(f);
    AnalyzeConfig cfg;
    cfg.system = f.get<std::string>("system", cfg.system);
    cfg.standard_sign = f.get<bool>("standard_sign", cfg.standard_sign);
    cfg.speed_mps = f.get<double>("speed_mps", cfg.speed_mps);
    cfg.analysis = parse_analysis(f.child("analysis"), "analyze.analysis");
    if (const json* jp = f.child("coordination_pairs")) {
        if (!jp->is_array()) throw ConfigError("analyze.coordination_pairs: expected array");
        for (const auto& row : *jp) {
            const auto v = row.get<std::vector<int>>();
            if (v.size() != 5)
                throw ConfigError("analyze.coordination_pairs: each row is [l, i, j, p, q]");
            cfg.coordination_pairs.push_back({v[0], v[1], v[2], v[3], v[4]});
        }
    }
    f.done();
    return cfg;
}

BoundsConfig parse_bounds_config(const std::string& json_text) {
    const json j = parse_text(json_text);
    Fields f(j, "bounds");
    check_schema(f);
    BoundsConfig cfg;
    cfg.system = f.get<std::string>("system", cfg.system);
    cfg.standard_sign = f.get<bool>("standard_sign", cfg.standard_sign);
    cfg.literal_paper_bounds = f.get<bool>("literal_paper_bounds", cfg.literal_paper_bounds);
    cfg.speed_mps = f.get<double>("speed_mps", cfg.speed_mps);
    cfg.samples = f.get<int>("samples", cfg.samples);
    cfg.analysis = parse_analysis(f.child("analysis"), "bounds.analysis");
    if (const json* ji = f.child("interval")) {
        Fields fi(*ji, "bounds.interval");
        const auto lb = fi.require<std::vector<std::vector<double>>>("lb");
        const auto ub = fi.require<std::vector<std::vector<double>>>("ub");
        fi.done();
        const int n = static_cast<int>(lb.size());
        if (n == 0 || ub.size() != lb.size())
            throw ConfigError("bounds.interval: lb/ub must be equal-size square matrices");
        Matrix mlb(n, n), mub(n, n);
        for (int r = 0; r < n; ++r) {
            if (static_cast<int>(lb[static_cast<size_t>(r)].size()) != n ||
                static_cast<int>(ub[static_cast<size_t>(r)].size()) != n)
                throw ConfigError("bounds.interval: rows must have length n");
            for (int c = 0; c < n; ++c) {
                mlb(r, c) = lb[static_cast<size_t>(r)][static_cast<size_t>(c)];
                mub(r, c) = ub[static_cast<size_t>(r)][static_cast<size_t>(c)];
            }
        }
        cfg.explicit_lb = mlb;
        cfg.explicit_ub = mub;
    }
    f.done();
    return cfg;
}

SimulateConfig parse_simulate_config(const std::string& json_text) {
    const json j = parse_text(json_text);
    Fields f(j, "simulate");
    check_schema(f);
    SimulateConfig cfg;
    cfg.analysis = parse_analysis(f.child("analysis"), "simulate.analysis");
    cfg.scenario = parse_scenario(f);
    f.done();
    cfg.scenario.validate();
    return cfg;
}

VerifyConfig parse_verify_config(const std::string& json_text) {
    const json j = parse_text(json_text);
    Fields f(j, "verify");
    check_schema(f);
    VerifyConfig cfg;
    const std::string mode = f.get<std::string>("mode", "full");
    if (mode == "smoke")
        cfg.smoke = true;
    else if (mode != "full")
        throw ConfigError("verify.mode: expected 'full' or 'smoke'");
    cfg.seed = f.get<std::uint64_t>("seed", cfg.seed);
    f.done();
    return cfg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario default_scenario() {
    Scenario sc;
    sc.plant.kind = PlantSpec::Kind::Schedule;
    sc.plant.schedule.clear();
    VehicleParams vp;
    ParamTrajectory caf;
    caf.kind = ParamTrajectory::Kind::Sinusoid;
    caf.center = vp.C_af;
    caf.amplitude = 0.6 * (104520.0 - vp.C_af);
    caf.frequency_hz = 0.15;
    ParamTrajectory car;
    car.kind = ParamTrajectory::Kind::Sinusoid;
    car.center = vp.C_ar;
    car.amplitude = 0.6 * (107510.0 - vp.C_ar);
    car.frequency_hz = 0.1;
    car.phase = 1.0;
    sc.plant.schedule.push_back(caf);
    sc.plant.schedule.push_back(car);
    sc.plant.schedule.push_back(ParamTrajectory::constant(vp.k_phi));
    sc.plant.schedule.push_back(ParamTrajectory::constant(vp.c_phi));
    sc.plant.schedule.push_back(ParamTrajectory::constant(0.0));
    sc.plant.schedule.push_back(ParamTrajectory::constant(0.0));
    return sc;
}

}  // namespace mmas
