#pragma once

#include <optional>

#include "mmas/linalg.hpp"

namespace mmas {

// Identification errors restricted to the observed channels: column i is e_i(t).
struct ErrorMatrix {
    Matrix E;  // n_obs x N, N >= 2
    double t = 0.0;
};

struct SimplexWeights {
    Vector w;

    static SimplexWeights uniform(int n) { return {Vector::Constant(n, 1.0 / n)}; }
    bool valid(double tol = 1e-12) const;
};

enum class Inclusion : unsigned char { Inside, Outside, Boundary };

const char* to_string(Inclusion s);

struct InclusionVerdict {
    Inclusion status = Inclusion::Boundary;
    // For INSIDE: an observed channel and a column pair with opposite signs
    // beyond the deadband. -1 when not applicable (e.g. all-zero channels).
    int witness_channel = -1;
    int witness_positive = -1;
    int witness_negative = -1;
    double deadband = 0.0;
};

// Sign test per observed channel: INSIDE when every channel either mixes both
// signs beyond the deadband or is entirely zero; OUTSIDE when some channel is
// strictly one-signed beyond the deadband; BOUNDARY otherwise.
InclusionVerdict inclusion_criterion(const ErrorMatrix& em, double deadband);

struct SolveOptions {
    double lambda = 1e-6;
    std::optional<Vector> w_prev;  // uniform when absent
    int max_iterations = 10000;
    double objective_tol = 1e-12;
    // Proximal re-solves (w_prev <- result). Each pass re-minimizes the same
    // objective anchored at the previous answer, driving the iterate to the
    // residual-minimal point nearest the original anchor.
    int refinements = 0;
};

struct WeightSolution {
    SimplexWeights weights;
    double residual = 0.0;       // ||E w||
    double scale = 0.0;          // ||E||_F
    int iterations = 0;
    int refinements_used = 0;
};

// argmin over the probability simplex of ||E w / ||E||_F||^2 + lambda ||w - w_prev||^2,
// by projected gradient descent with fixed step 1/L (power-iteration estimate).
// The Frobenius normalization makes the solution invariant to positive scalings
// of E. All-zero E returns w_prev unchanged.
WeightSolution solve_weights(const ErrorMatrix& em, const SolveOptions& opts = {});

// Convex combination of model states: columns of X are x_i.
Vector estimate_state(const Matrix& model_states, const SimplexWeights& w);

// Exact Euclidean projection onto the probability simplex.
Vector project_to_simplex(const Vector& v);

}  // namespace mmas
