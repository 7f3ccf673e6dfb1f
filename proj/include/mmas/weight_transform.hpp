#pragma once

#include <vector>

#include "mmas/canonical.hpp"
#include "mmas/weights.hpp"

namespace mmas {

// Similarity machinery tying vertex canonical forms to the plant-level
// transformation: T_p = (sum_i w_i T_i^{-1})^{-1} and S_i = T_p T_i^{-1},
// so that sum_i w_i S_i = I and T_p^{-1} = sum_i w_i T_i^{-1}.
struct TransformBundle {
    std::vector<Matrix> T_inv;
    Matrix T_p;
    std::vector<Matrix> S;
    SimplexWeights w;

    int n() const { return static_cast<int>(T_p.rows()); }

    double sum_to_identity_residual() const;  // || sum w_i S_i - I ||_max
    double mixture_residual() const;          // || T_p^{-1} - sum w_i T_i^{-1} ||_max
};

TransformBundle build_transform_bundle(const std::vector<CanonicalForm>& models,
                                       const SimplexWeights& w, double cond_limit = 1e12);

// Reconstruct the plant companion pair as the weighted similarity mixture
// sum_i w_i S_i A_bar_i S_i^{-1}; B_bar is e_n by construction and the
// returned residual cross-checks it against sum_i w_i S_i b_bar_i.
struct CanonicalReconstruction {
    Matrix A_bar;
    Vector b_bar;
    double b_residual = 0.0;
};

CanonicalReconstruction reconstruct_canonical_plant(const TransformBundle& bundle,
                                                    const std::vector<CanonicalForm>& models);

struct ConsistencyReport {
    double structure_residual = 0.0;  // shifted-identity pattern of the reconstruction
    double last_row_residual = 0.0;   // vs direct canonicalization of the mixed pair
    double full_residual = 0.0;       // whole-matrix gap vs the oracle
    bool structure_ok = false;
    bool last_row_ok = false;
};

// Compare a reconstructed companion matrix against the independent oracle:
// canonicalize (sum w_i A_i, sum w_i b_i) directly and measure the gaps.
ConsistencyReport verify_companion_consistency(const Matrix& A_bar_p,
                                               const std::vector<CanonicalForm>& models,
                                               const SimplexWeights& w, double tol = 1e-8);

}  // namespace mmas
