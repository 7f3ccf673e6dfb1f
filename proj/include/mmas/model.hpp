#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mmas/errors.hpp"
#include "mmas/linalg.hpp"

namespace mmas {

// Hyper-rectangle of admissible parameter values: one [lower, upper] span per
// parameter, strict lower < upper.
struct ParameterBox {
    std::vector<std::string> names;
    Vector lower;
    Vector upper;

    ParameterBox(std::vector<std::string> names_, Vector lower_, Vector upper_);

    int dim() const { return static_cast<int>(lower.size()); }
    bool contains(const Vector& m, double slack = 0.0) const;
    Vector midpoint() const { return 0.5 * (lower + upper); }
};

enum class Bound : unsigned char { Low = 0, High = 1 };

// One vertex of the box: a LOW/HIGH choice per parameter.
struct Corner {
    std::vector<Bound> bits;

    Vector to_vector(const ParameterBox& box) const;
    std::string to_string() const;  // e.g. "LHHL"

    static Corner all_low(int k) { return Corner{std::vector<Bound>(k, Bound::Low)}; }
    static Corner all_high(int k) { return Corner{std::vector<Bound>(k, Bound::High)}; }
    // Bit (k-1-l) of idx drives parameter l, so the leftmost parameter is most significant.
    static Corner from_index(std::uint64_t idx, int k);
    std::uint64_t to_index() const;

    bool operator==(const Corner& other) const { return bits == other.bits; }
};

// Lexicographic order with Low < High, leftmost parameter most significant.
inline bool corner_less(const Corner& a, const Corner& b) { return a.to_index() < b.to_index(); }

struct LinearSystem {
    Matrix A;
    Matrix B;

    int n() const { return static_cast<int>(A.rows()); }
    int h() const { return static_cast<int>(B.cols()); }
};

// Family m -> (A(m), B(m)) over a box. eval must be a deterministic total function
// on the box; entries are treated as numeric black boxes (no symbolic form).
struct ParameterizedSystem {
    ParameterBox box;
    int n = 0;
    int h = 0;
    std::function<LinearSystem(const Vector&)> eval;
};

// Element-wise bounds lb_ij <= a_ij <= ub_ij.
struct MatrixInterval {
    Matrix lb;
    Matrix ub;

    MatrixInterval(Matrix lb_, Matrix ub_);
    int n() const { return static_cast<int>(lb.rows()); }
};

LinearSystem eval_at_corner(const ParameterizedSystem& ps, const Corner& c);

struct MonotonicityReport;  // defined in tying.hpp

// Tight element-wise bounds on A over the box. Requires a fully monotone report.
// Below the corner budget this enumerates all 2^k vertices; above it, the
// per-entry extremal corner implied by the monotone directions is used.
MatrixInterval element_bounds(const ParameterizedSystem& ps, const MonotonicityReport& report,
                              int corner_budget_log2 = 20);

}  // namespace mmas
