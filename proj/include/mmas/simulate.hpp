#pragma once

#include <cstdint>
#include <vector>

#include "mmas/tying.hpp"
#include "mmas/vehicle.hpp"
#include "mmas/weights.hpp"

namespace mmas {

struct SteeringProfile {
    enum class Kind : unsigned char { Sine, Step, SweptSine };
    Kind kind = Kind::Sine;
    double amplitude_rad = 2.0 * 3.14159265358979323846 / 180.0;
    double frequency_hz = 0.5;      // start frequency for swept sine
    double frequency_end_hz = 2.0;  // swept sine only
    double step_time_s = 0.5;       // step only

    double value(double t, double horizon) const;
};

// Piecewise-constant or sinusoidal trajectory of one scheduled parameter.
struct ParamTrajectory {
    enum class Kind : unsigned char { Constant, Sinusoid, Piecewise };
    Kind kind = Kind::Constant;
    double value = 0.0;  // Constant
    double center = 0.0, amplitude = 0.0, frequency_hz = 0.0, phase = 0.0;  // Sinusoid
    std::vector<double> times;  // Piecewise: value[i] holds on [times[i], times[i+1])
    std::vector<double> values;

    double at(double t) const;

    static ParamTrajectory constant(double v) {
        ParamTrajectory p;
        p.kind = Kind::Constant;
        p.value = v;
        return p;
    }
};

// How the synthetic plant evolves: either a schedule of the six uncertain
// parameters (may leave the box) or a fixed convex combination of the
// identification models.
struct PlantSpec {
    enum class Kind : unsigned char { Schedule, ConvexCombo };
    Kind kind = Kind::Schedule;
    std::vector<ParamTrajectory> schedule;  // size k when Kind::Schedule
    Vector combo_weights;                   // size N when Kind::ConvexCombo
};

// How the identification models are driven.
//  SharedState: x_i' = A_i x_p + B_i delta - decay (x_i - x_p); the common
//    error propagator keeps sum_i w*_i e_i identically zero for in-hull plants.
//  Parallel: x_i' = A_i x_i + B_i delta (free-running models).
enum class IdentifierMode : unsigned char { SharedState, Parallel };

struct EstimatorSettings {
    double lambda = 1e-6;
    int refinements = 4;
    double deadband_factor = 1e-9;  // deadband = factor * running RMS of the observed channel
    double identifier_decay = 0.0;  // >= 0; 0 keeps pure integral identifiers
    IdentifierMode identifier_mode = IdentifierMode::SharedState;
    int observed_channel = 1;  // yaw rate
};

struct Scenario {
    double speed_mps = 50.0 / 3.6;
    SteeringProfile steering;
    double horizon_s = 5.0;
    double step_s = 1e-3;
    PlantSpec plant;
    std::uint64_t seed = 0;
    VehicleParams nominal;  // fixed parameters; u is overridden by speed_mps
    SignConvention signs = SignConvention::AsPrinted;
    EstimatorSettings estimator;
    double disturbance_amplitude = 0.0;  // lateral-force channel, N
    double disturbance_frequency_hz = 1.0;

    void validate() const;
};

struct SimulationTrace {
    std::vector<double> t;
    Matrix plant_states;     // steps x n
    Matrix estimates;        // steps x n
    Matrix model_states;     // steps x (N*n), model-major blocks
    Matrix errors;           // steps x N, observed channel
    Matrix weights;          // steps x N
    std::vector<Inclusion> inclusion;
    std::vector<double> weight_residual;  // ||E w||
    std::vector<double> error_scale;      // ||E||_F
    std::vector<double> steering;
    int n = 0;
    int N = 0;
    bool diverged = false;
    double diverged_at = 0.0;

    int steps() const { return static_cast<int>(t.size()); }
};

// Fixed-step RK4 simulation of the plant and the identification models with
// per-step inclusion verdicts, weight estimation and state reconstruction.
// States start at zero (e_i(t0) = 0). Divergence marks the trace instead of
// throwing so that partly-written traces can still be flushed by callers.
SimulationTrace simulate_scenario(const Scenario& sc, const VertexModelSet& models);

// Plant-only RK4 integration (step-size studies).
Matrix integrate_plant(const Scenario& sc, const VertexModelSet& models, double step_s);

}  // namespace mmas
