#pragma once

#include "mmas/model.hpp"

namespace mmas {

// Closed real interval with exact endpoint arithmetic (outward rounding is not
// required at the tolerances used here; soundness tests carry a 1e-12 slack).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
    double width() const { return hi - lo; }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-() const { return {-hi, -lo}; }

    // General interval product: min/max over the four endpoint products.
    Interval operator*(const Interval& o) const;
};

struct CoefficientBounds {
    Vector lb;  // (c_0 ... c_{n-1})
    Vector ub;

    bool contains(const Vector& c, double rel_slack) const;
};

struct BoundsOptions {
    // Reproduce the naive per-permutation endpoint-product bound. It is valid only
    // for entrywise-nonnegative intervals and is provided for comparison; the
    // default folds exact interval products so sign-indefinite entries stay sound.
    bool literal_paper_products = false;
};

// Bounds for c_{n-1} = -tr(A).
Interval trace_coeff_bounds(const MatrixInterval& mi);

// Bounds for det(A) via signed permutation sums (Leibniz). Requires n <= 8.
Interval det_bounds(const MatrixInterval& mi, const BoundsOptions& opts = {});

// Bounds for c_0 = (-1)^n det(A).
Interval constant_term_bounds(const MatrixInterval& mi, const BoundsOptions& opts = {});

// Bounds for c_k (1 <= k <= n-2) via sums of principal minors of size n-k.
Interval intermediate_coeff_bounds(const MatrixInterval& mi, int k, const BoundsOptions& opts = {});

// All coefficients (c_0 ... c_{n-1}); the monic leading 1 is implicit.
CoefficientBounds all_coeff_bounds(const MatrixInterval& mi, const BoundsOptions& opts = {});

}  // namespace mmas
