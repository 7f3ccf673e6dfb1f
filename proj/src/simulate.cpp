#include "mmas/simulate.hpp"

#include <cmath>
#include <numbers>

namespace mmas {

double SteeringProfile::value(double t, double horizon) const {
    switch (kind) {
        case Kind::Sine:
            return amplitude_rad * std::sin(2.0 * std::numbers::pi * frequency_hz * t);
        case Kind::Step:
            return t >= step_time_s ? amplitude_rad : 0.0;
        case Kind::SweptSine: {
            const double T = std::max(horizon, 1e-9);
            const double phase =
                frequency_hz * t + 0.5 * (frequency_end_hz - frequency_hz) * t * t / T;
            return amplitude_rad * std::sin(2.0 * std::numbers::pi * phase);
        }
    }
    return 0.0;
}

double ParamTrajectory::at(double t) const {
    switch (kind) {
        case Kind::Constant:
            return value;
        case Kind::Sinusoid:
            return center + amplitude * std::sin(2.0 * std::numbers::pi * frequency_hz * t + phase);
        case Kind::Piecewise: {
            if (values.empty()) return 0.0;
            size_t idx = 0;
            while (idx + 1 < times.size() && t >= times[idx + 1]) ++idx;
            return values[std::min(idx, values.size() - 1)];
        }
    }
    return 0.0;
}

void Scenario::validate() const {
    if (!(step_s > 0.0)) throw DimensionError("Scenario: step must be positive");
    if (!(horizon_s >= 10.0 * step_s)) throw DimensionError("Scenario: horizon must be >= 10 steps");
    if (!(speed_mps > 0.0)) throw DimensionError("Scenario: speed must be positive");
    if (plant.kind == PlantSpec::Kind::Schedule && plant.schedule.size() != 6)
        throw DimensionError("Scenario: schedule must cover the six uncertain parameters");
    if (estimator.observed_channel < 0 || estimator.observed_channel >= 4)
        throw DimensionError("Scenario: observed channel out of range");
}

namespace {

struct PlantEvaluator {
    const Scenario& sc;
    VehicleParams nominal_at_speed;
    bool fixed = false;
    Matrix A_fixed;
    Matrix B_fixed;
    Vector disturbance_column;

    PlantEvaluator(const Scenario& scenario, const VertexModelSet& models) : sc(scenario) {
        nominal_at_speed = sc.nominal;
        nominal_at_speed.u = sc.speed_mps;
        if (sc.plant.kind == PlantSpec::Kind::ConvexCombo) {
            const int N = models.count();
            if (sc.plant.combo_weights.size() != N)
                throw DimensionError("Scenario: combo weights size differs from model count");
            const int n = models.systems.front().n();
            A_fixed = Matrix::Zero(n, n);
            B_fixed = Matrix::Zero(n, 1);
            for (int i = 0; i < N; ++i) {
                A_fixed += sc.plant.combo_weights[i] * models.systems[static_cast<size_t>(i)].A;
                B_fixed += sc.plant.combo_weights[i] * models.systems[static_cast<size_t>(i)].B;
            }
            fixed = true;
        }
        // Lateral-force disturbance column from the nominal geometry.
        const double I_c = nominal_at_speed.composite_roll_inertia();
        const double kappa =
            1.0 + nominal_at_speed.m_s * nominal_at_speed.m_s * nominal_at_speed.h_s *
                      nominal_at_speed.h_s / (nominal_at_speed.m * I_c);
        disturbance_column = Vector::Zero(4);
        disturbance_column[0] = kappa / (nominal_at_speed.m * nominal_at_speed.u);
        disturbance_column[3] =
            nominal_at_speed.m_s * nominal_at_speed.h_s / (nominal_at_speed.m * I_c);
    }

    void at(double t, Matrix& A, Matrix& B) const {
        if (fixed) {
            A = A_fixed;
            B = B_fixed;
            return;
        }
        Vector m6(6);
        for (int p = 0; p < 6; ++p) m6[p] = sc.plant.schedule[static_cast<size_t>(p)].at(t);
        const LinearSystem sys = build_vehicle_system(apply_uncertain(nominal_at_speed, m6), sc.signs);
        A = sys.A;
        B = sys.B;
    }

    double disturbance(double t) const {
        if (sc.disturbance_amplitude == 0.0) return 0.0;
        return sc.disturbance_amplitude *
               std::sin(2.0 * std::numbers::pi * sc.disturbance_frequency_hz * t);
    }
};

}  // namespace

SimulationTrace simulate_scenario(const Scenario& sc, const VertexModelSet& models) {
    sc.validate();
    if (models.count() < 2)
        throw DimensionError("simulate_scenario: need at least two identification models");
    const int N = models.count();
    const int n = models.systems.front().n();
    const int obs = sc.estimator.observed_channel;
    const PlantEvaluator plant(sc, models);

    const int steps = static_cast<int>(std::llround(sc.horizon_s / sc.step_s));
    const double h = sc.step_s;

    SimulationTrace tr;
    tr.n = n;
    tr.N = N;
    tr.t.reserve(static_cast<size_t>(steps) + 1);
    tr.plant_states.resize(steps + 1, n);
    tr.estimates.resize(steps + 1, n);
    tr.model_states.resize(steps + 1, N * n);
    tr.errors.resize(steps + 1, N);
    tr.weights.resize(steps + 1, N);
    tr.inclusion.reserve(static_cast<size_t>(steps) + 1);
    tr.weight_residual.reserve(static_cast<size_t>(steps) + 1);
    tr.error_scale.reserve(static_cast<size_t>(steps) + 1);
    tr.steering.reserve(static_cast<size_t>(steps) + 1);

    // Combined state [x_p; x_1; ...; x_N]; everything starts at zero (e_i(t0) = 0).
    Vector y = Vector::Zero(n + N * n);
    Matrix A_p(n, n), B_p(n, 1);

    auto derivative = [&](double t, const Vector& state, Vector& dy) {
        const double delta = sc.steering.value(t, sc.horizon_s);
        const double dist = plant.disturbance(t);
        plant.at(t, A_p, B_p);
        const auto x_p = state.segment(0, n);
        dy.segment(0, n) = A_p * x_p + B_p.col(0) * delta + plant.disturbance_column * dist;
        for (int i = 0; i < N; ++i) {
            const auto& sys = models.systems[static_cast<size_t>(i)];
            const auto x_i = state.segment(n + i * n, n);
            if (sc.estimator.identifier_mode == IdentifierMode::SharedState) {
                dy.segment(n + i * n, n) = sys.A * x_p + sys.B.col(0) * delta -
                                           sc.estimator.identifier_decay * (x_i - x_p);
            } else {
                dy.segment(n + i * n, n) = sys.A * x_i + sys.B.col(0) * delta;
            }
        }
    };

    Vector k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size());
    Vector w_prev = SimplexWeights::uniform(N).w;
    double obs_sq_sum = 0.0;

    for (int step = 0; step <= steps; ++step) {
        const double t = step * h;

        // Record the current sample.
        tr.t.push_back(t);
        tr.steering.push_back(sc.steering.value(t, sc.horizon_s));
        const auto x_p = y.segment(0, n);
        tr.plant_states.row(step) = x_p.transpose();
        Matrix model_states(n, N);
        for (int i = 0; i < N; ++i) model_states.col(i) = y.segment(n + i * n, n);
        tr.model_states.row(step) = Eigen::Map<const Vector>(model_states.data(), N * n).transpose();

        ErrorMatrix em;
        em.t = t;
        em.E.resize(1, N);
        for (int i = 0; i < N; ++i) em.E(0, i) = model_states(obs, i) - x_p[obs];
        tr.errors.row(step) = em.E.row(0);

        obs_sq_sum += x_p[obs] * x_p[obs];
        const double running_rms = std::sqrt(obs_sq_sum / (step + 1));
        const double deadband = sc.estimator.deadband_factor * running_rms;

        tr.inclusion.push_back(inclusion_criterion(em, deadband).status);

        SolveOptions so;
        so.lambda = sc.estimator.lambda;
        so.w_prev = w_prev;
        so.refinements = sc.estimator.refinements;
        const WeightSolution ws = solve_weights(em, so);
        w_prev = ws.weights.w;
        tr.weights.row(step) = ws.weights.w.transpose();
        tr.weight_residual.push_back(ws.residual);
        tr.error_scale.push_back(ws.scale);
        tr.estimates.row(step) = estimate_state(model_states, ws.weights).transpose();

        if (step == steps) break;

        derivative(t, y, k1);
        derivative(t + 0.5 * h, y + 0.5 * h * k1, k2);
        derivative(t + 0.5 * h, y + 0.5 * h * k2, k3);
        derivative(t + h, y + h * k3, k4);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!y.allFinite()) {
            tr.diverged = true;
            tr.diverged_at = t + h;
            const int have = step + 1;
            tr.plant_states.conservativeResize(have, n);
            tr.estimates.conservativeResize(have, n);
            tr.model_states.conservativeResize(have, N * n);
            tr.errors.conservativeResize(have, N);
            tr.weights.conservativeResize(have, N);
            break;
        }
    }
    return tr;
}

Matrix integrate_plant(const Scenario& sc, const VertexModelSet& models, double step_s) {
    sc.validate();
    const PlantEvaluator plant(sc, models);
    const int n = 4;
    const int steps = static_cast<int>(std::llround(sc.horizon_s / step_s));
    const double h = step_s;

    Matrix out(steps + 1, n);
    Vector x = Vector::Zero(n);
    Matrix A(n, n), B(n, 1);
    auto deriv = [&](double t, const Vector& state) -> Vector {
        const double delta = sc.steering.value(t, sc.horizon_s);
        plant.at(t, A, B);
        return A * state + B.col(0) * delta +
               plant.disturbance_column * plant.disturbance(t);
    };
    out.row(0) = x.transpose();
    for (int step = 0; step < steps; ++step) {
        const double t = step * h;
        const Vector k1 = deriv(t, x);
        const Vector k2 = deriv(t + 0.5 * h, x + 0.5 * h * k1);
        const Vector k3 = deriv(t + 0.5 * h, x + 0.5 * h * k2);
        const Vector k4 = deriv(t + h, x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.allFinite()) throw SimulationDiverged(t + h);
        out.row(step + 1) = x.transpose();
    }
    return out;
}

}  // namespace mmas
