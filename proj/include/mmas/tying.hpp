#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "mmas/canonical.hpp"
#include "mmas/model.hpp"

namespace mmas {

enum class Direction : unsigned char { Increasing, Decreasing, Constant, NonMonotone };

const char* to_string(Direction d);

struct NonMonotoneWitness {
    int param = -1;
    int row = -1;
    int col = -1;
    // Parameter vectors at which slopes of opposite sign were observed.
    Vector rise_at;
    Vector fall_at;
    double rise_step = 0.0;
    double fall_step = 0.0;
};

// Per-parameter, per-entry direction classification from sampled cross-sections.
struct MonotonicityReport {
    int k = 0;
    int n = 0;
    int grid = 0;
    int cross_sections = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::vector<Direction> directions;  // index (l, i, j) -> l*n*n + i*n + j
    std::vector<NonMonotoneWitness> witnesses;
    double slack = 0.0;  // worst wrong-way step that stayed inside the deadband

    Direction at(int l, int i, int j) const { return directions[(l * n + i) * n + j]; }
    bool all_monotone() const;
    std::optional<NonMonotoneWitness> first_witness() const;
};

// Classify every (l, i, j) by the sign pattern of consecutive differences of
// g_{l,ij} along [p_l, q_l], sampled on `grid` points for `cross_sections`
// seeded random fixed cross-sections plus the all-low and all-high ones.
// Opposite-sign steps beyond the deadband (tol times the per-curve range),
// within or across cross-sections, classify the entry NON_MONOTONE.
MonotonicityReport scan_monotonicity(const ParameterizedSystem& ps, int grid = 17,
                                     int cross_sections = 8, double tol = 1e-7,
                                     std::uint64_t seed = 0);

enum class Slot : unsigned char { Low, High, DontCare };

struct CornerTemplate {
    std::vector<Slot> slots;

    bool matches(const Corner& c) const;
    int dont_care_count() const;
    std::string to_string() const;  // e.g. "H*L***"
};

// argmin/argmax corner templates per entry, indexed i*n + j.
struct EntryTemplates {
    int n = 0;
    int k = 0;
    std::vector<CornerTemplate> argmin;
    std::vector<CornerTemplate> argmax;
};

// Derive the extremal corner templates from a fully monotone report.
// Throws NonMonotoneEntry naming the first offending (l, i, j).
EntryTemplates extremal_corners(const MonotonicityReport& report);

// Key: (entry index i*n + j, want_max).
using CoverageMap = std::map<std::pair<int, bool>, int>;

struct VertexModelSet {
    std::vector<Corner> corners;
    std::vector<LinearSystem> systems;
    std::vector<CanonicalForm> canonical;
    CoverageMap coverage;

    int count() const { return static_cast<int>(corners.size()); }
};

struct SelectOptions {
    double canonical_tol = 1e-10;
    // Cap on enumerating template completions; above it only the low/high
    // fill-ins of each template are offered as candidates.
    int completion_budget_log2 = 20;
};

// Greedy set cover over (entry, min|max) requirements with lexicographic
// tie-breaking and a final redundancy-pruning pass; selected corners are
// evaluated and transformed to canonical form.
VertexModelSet select_vertex_models(const ParameterizedSystem& ps, const EntryTemplates& templates,
                                    const SelectOptions& opts = {});

struct ConditionVerdict {
    bool holds = false;
    double residual = 0.0;
};

// Verdicts for the coordinated-parameter conditions on a pair of curves.
// Condition 5 (periodic structure) is never evaluated; `periodic_checked`
// stays false to make the NOT_CHECKED status explicit.
struct CoordinationVerdict {
    ConditionVerdict affine;  // g_b ~ alpha * g_a + beta
    double alpha = 0.0;
    double beta = 0.0;
    ConditionVerdict functional;  // g_b = h(g_a), h strictly monotone
    ConditionVerdict symmetry;    // both curves even about a common center
    double symmetry_center = 0.0;
    ConditionVerdict critical_points;  // shared critical points, same extremum type
    bool periodic_checked = false;
};

CoordinationVerdict check_coordination(const ParameterizedSystem& ps, int l,
                                       std::pair<int, int> entry_a, std::pair<int, int> entry_b,
                                       int grid = 33, double tol = 1e-6);

}  // namespace mmas
