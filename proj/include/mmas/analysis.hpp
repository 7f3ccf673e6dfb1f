#pragma once

#include <optional>

#include "mmas/charpoly_bounds.hpp"
#include "mmas/config.hpp"
#include "mmas/systems.hpp"
#include "mmas/tying.hpp"

namespace mmas {

struct AnalysisResult {
    MonotonicityReport report;
    std::optional<EntryTemplates> templates;  // absent when any entry is non-monotone
    std::optional<VertexModelSet> models;
    // Fraction of sampled in-box systems whose observed-row weight residual
    // stays below the configured tolerance under the selected model set.
    double hull_coverage = 0.0;
    int coverage_samples = 0;
    int observed_row = 1;
    int paper_target_count = 2;  // reduction target recorded for the vehicle family
};

AnalysisResult analyze_system(const NamedSystem& ns, const AnalysisOptions& opts);

// Observed-row hull membership residual for one concrete system: the columns of
// E are row `obs` of [A_i | B_i] minus row `obs` of [A | B].
double observed_row_residual(const LinearSystem& plant, const VertexModelSet& models, int obs);

double hull_coverage_fraction(const ParameterizedSystem& ps, const VertexModelSet& models,
                              int samples, double residual_tol, std::uint64_t seed, int obs);

struct BoundsResult {
    MatrixInterval interval;
    CoefficientBounds bounds;
    Vector sampled_min;  // observed coefficient extremes over the sampling oracle
    Vector sampled_max;
    int violations = 0;
    int samples = 0;
};

// Entrywise-uniform sampling oracle over the interval; every sampled matrix's
// coefficients must land inside the bounds (violations counted, not thrown).
BoundsResult bounds_with_sampling(const MatrixInterval& mi, int samples, std::uint64_t seed,
                                  const BoundsOptions& opts = {}, double rel_slack = 1e-12);

}  // namespace mmas
