#include "mmas/analysis.hpp"

#include "mmas/rng.hpp"

namespace mmas {

double observed_row_residual(const LinearSystem& plant, const VertexModelSet& models, int obs) {
    const int N = models.count();
    const int cols = plant.n() + plant.h();
    Matrix E(cols, N);
    for (int i = 0; i < N; ++i) {
        const LinearSystem& mi = models.systems[static_cast<size_t>(i)];
        for (int j = 0; j < plant.n(); ++j) E(j, i) = mi.A(obs, j) - plant.A(obs, j);
        for (int j = 0; j < plant.h(); ++j)
            E(plant.n() + j, i) = mi.B(obs, j) - plant.B(obs, j);
    }
    ErrorMatrix em{E, 0.0};
    // Pure residual minimization: the nearest-to-previous tie-break is
    // irrelevant for a membership statistic, so lambda stays 0 and the
    // objective tolerance sits near machine precision.
    SolveOptions so;
    so.lambda = 0.0;
    so.objective_tol = 1e-30;
    const WeightSolution ws = solve_weights(em, so);
    return ws.scale > 0.0 ? ws.residual / ws.scale : 0.0;
}

double hull_coverage_fraction(const ParameterizedSystem& ps, const VertexModelSet& models,
                              int samples, double residual_tol, std::uint64_t seed, int obs) {
    if (samples <= 0 || models.count() < 2) return 0.0;
    Rng rng(seed);
    int covered = 0;
    for (int s = 0; s < samples; ++s) {
        const Vector m = rng.uniform_vector(ps.box.lower, ps.box.upper);
        if (observed_row_residual(ps.eval(m), models, obs) <= residual_tol) ++covered;
    }
    return static_cast<double>(covered) / samples;
}

AnalysisResult analyze_system(const NamedSystem& ns, const AnalysisOptions& opts) {
    AnalysisResult res;
    res.report = scan_monotonicity(ns.system, opts.grid, opts.cross_sections, opts.tol, opts.seed);
    if (!res.report.all_monotone()) return res;

    res.templates = extremal_corners(res.report);
    res.models = select_vertex_models(ns.system, *res.templates);

    res.observed_row = ns.system.n >= 2 ? 1 : 0;
    if (res.models->count() >= 2 && opts.coverage_samples > 0) {
        res.coverage_samples = opts.coverage_samples;
        res.hull_coverage =
            hull_coverage_fraction(ns.system, *res.models, opts.coverage_samples,
                                   opts.coverage_residual_tol, opts.seed, res.observed_row);
    }
    return res;
}

BoundsResult bounds_with_sampling(const MatrixInterval& mi, int samples, std::uint64_t seed,
                                  const BoundsOptions& opts, double rel_slack) {
    BoundsResult res{mi, all_coeff_bounds(mi, opts), Vector(), Vector(), 0, samples};
    const int n = mi.n();
    res.sampled_min = Vector::Constant(n, std::numeric_limits<double>::infinity());
    res.sampled_max = Vector::Constant(n, -std::numeric_limits<double>::infinity());

    Rng rng(seed);
    Matrix A(n, n);
    for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(mi.lb(i, j), mi.ub(i, j));
        const Vector c = char_coeffs(A);
        res.sampled_min = res.sampled_min.cwiseMin(c);
        res.sampled_max = res.sampled_max.cwiseMax(c);
        if (!res.bounds.contains(c, rel_slack)) ++res.violations;
    }
    return res;
}

}  // namespace mmas
