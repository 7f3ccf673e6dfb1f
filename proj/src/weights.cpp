#include "mmas/weights.hpp"

#include <algorithm>
#include <cmath>

#include "mmas/errors.hpp"

namespace mmas {

const char* to_string(Inclusion s) {
    switch (s) {
        case Inclusion::Inside: return "INSIDE";
        case Inclusion::Outside: return "OUTSIDE";
        case Inclusion::Boundary: return "BOUNDARY";
    }
    return "?";
}

bool SimplexWeights::valid(double tol) const {
    if (w.size() == 0) return false;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] < 0.0) return false;
    return std::abs(w.sum() - 1.0) <= tol;
}

InclusionVerdict inclusion_criterion(const ErrorMatrix& em, double deadband) {
    if (deadband < 0.0) throw DimensionError("inclusion_criterion: deadband must be >= 0");
    const Matrix& E = em.E;
    if (E.cols() < 2) throw DimensionError("inclusion_criterion: need at least two models");

    InclusionVerdict verdict;
    verdict.deadband = deadband;
    bool any_boundary = false;
    for (int ch = 0; ch < E.rows(); ++ch) {
        int pos = -1, neg = -1, zeros = 0;
        for (int i = 0; i < E.cols(); ++i) {
            const double v = E(ch, i);
            if (!std::isfinite(v)) throw NonFiniteError("inclusion_criterion: non-finite error");
            if (v > deadband) {
                if (pos < 0) pos = i;
            } else if (v < -deadband) {
                if (neg < 0) neg = i;
            } else {
                ++zeros;
            }
        }
        const bool mixed = pos >= 0 && neg >= 0;
        const bool all_zero = zeros == E.cols();
        const bool one_signed = !mixed && !all_zero && zeros == 0;
        if (one_signed) {
            verdict.status = Inclusion::Outside;
            verdict.witness_channel = ch;
            return verdict;
        }
        if (mixed && verdict.witness_channel < 0) {
            verdict.witness_channel = ch;
            verdict.witness_positive = pos;
            verdict.witness_negative = neg;
        }
        if (!mixed && !all_zero) any_boundary = true;
    }
    verdict.status = any_boundary ? Inclusion::Boundary : Inclusion::Inside;
    return verdict;
}

Vector project_to_simplex(const Vector& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0;
    double tau = 0.0;
    int rho = 0;
    for (int i = 0; i < n; ++i) {
        cumsum += u[static_cast<size_t>(i)];
        const double candidate = (cumsum - 1.0) / (i + 1);
        if (u[static_cast<size_t>(i)] - candidate > 0.0) {
            rho = i + 1;
            tau = candidate;
        }
    }
    (void)rho;
    Vector w(n);
    for (int i = 0; i < n; ++i) w[i] = std::max(v[i] - tau, 0.0);
    return w;
}

namespace {

// Largest eigenvalue of G (symmetric PSD) by power iteration from a fixed start.
double power_iteration_max_eig(const Matrix& G) {
    const int n = static_cast<int>(G.rows());
    Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double eig = 0.0;
    for (int it = 0; it < 100; ++it) {
        Vector gv = G * v;
        const double norm = gv.norm();
        if (norm == 0.0) return 0.0;
        v = gv / norm;
        const double next = v.dot(G * v);
        if (std::abs(next - eig) <= 1e-14 * std::max(1.0, next)) {
            eig = next;
            break;
        }
        eig = next;
    }
    return eig;
}

struct PgdResult {
    Vector w;
    int iterations = 0;
};

PgdResult projected_gradient(const Matrix& En, const Vector& anchor, const Vector& start,
                             double lambda, int max_iterations, double objective_tol) {
    const Matrix G = En.transpose() * En;
    const double L = 2.0 * (power_iteration_max_eig(G) * 1.01 + lambda);
    const double step = L > 0.0 ? 1.0 / L : 1.0;

    Vector w = project_to_simplex(start);
    auto objective = [&](const Vector& x) {
        return (En * x).squaredNorm() + lambda * (x - anchor).squaredNorm();
    };
    double f_prev = objective(w);
    int it = 0;
    for (; it < max_iterations; ++it) {
        const Vector grad = 2.0 * (G * w) + 2.0 * lambda * (w - anchor);
        w = project_to_simplex(w - step * grad);
        const double f = objective(w);
        if (std::abs(f_prev - f) <= objective_tol) {
            ++it;
            break;
        }
        f_prev = f;
    }
    return {w, it};
}

}  // namespace

WeightSolution solve_weights(const ErrorMatrix& em, const SolveOptions& opts) {
    const Matrix& E = em.E;
    const int N = static_cast<int>(E.cols());
    if (N < 2) throw DimensionError("solve_weights: need at least two models");
    if (!E.allFinite()) throw NonFiniteError("solve_weights: non-finite error matrix");

    Vector w_prev = opts.w_prev ? *opts.w_prev : SimplexWeights::uniform(N).w;
    if (w_prev.size() != N) throw DimensionError("solve_weights: w_prev size mismatch");

    WeightSolution sol;
    sol.scale = E.norm();  // Frobenius
    if (sol.scale == 0.0) {
        sol.weights = {project_to_simplex(w_prev)};
        sol.residual = 0.0;
        return sol;
    }

    // Normalizing by ||E||_F makes the combined objective, and therefore the
    // minimizer, invariant to positive rescalings of E.
    const Matrix En = E / sol.scale;

    Vector anchor = w_prev;
    Vector w = w_prev;
    int total_iters = 0;
    int refinement = 0;
    double prev_obj = std::numeric_limits<double>::infinity();
    for (; refinement <= std::max(0, opts.refinements); ++refinement) {
        PgdResult res = projected_gradient(En, anchor, w, opts.lambda, opts.max_iterations,
                                           opts.objective_tol);
        total_iters += res.iterations;
        w = res.w;
        const double obj = (En * w).squaredNorm();
        if (obj >= prev_obj - 1e-18) {
            prev_obj = std::min(prev_obj, obj);
            break;  // proximal pass stopped improving the residual
        }
        prev_obj = obj;
        anchor = w;
    }

    sol.weights = {w};
    sol.residual = (E * w).norm();
    sol.iterations = total_iters;
    sol.refinements_used = refinement;
    return sol;
}

Vector estimate_state(const Matrix& model_states, const SimplexWeights& w) {
    if (model_states.cols() != w.w.size())
        throw DimensionError("estimate_state: weight count differs from model count");
    return model_states * w.w;
}

}  // namespace mmas
