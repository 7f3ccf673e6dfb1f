#include "mmas/weight_transform.hpp"

#include "mmas/errors.hpp"

namespace mmas {

double TransformBundle::sum_to_identity_residual() const {
    const int dim = n();
    Matrix sum = Matrix::Zero(dim, dim);
    for (size_t i = 0; i < S.size(); ++i) sum += w.w[static_cast<Eigen::Index>(i)] * S[i];
    return (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

double TransformBundle::mixture_residual() const {
    const int dim = n();
    Matrix sum = Matrix::Zero(dim, dim);
    for (size_t i = 0; i < T_inv.size(); ++i) sum += w.w[static_cast<Eigen::Index>(i)] * T_inv[i];
    const Matrix T_p_inv = invert(T_p);
    return (sum - T_p_inv).cwiseAbs().maxCoeff() / std::max(1.0, T_p_inv.cwiseAbs().maxCoeff());
}

TransformBundle build_transform_bundle(const std::vector<CanonicalForm>& models,
                                       const SimplexWeights& w, double cond_limit) {
    if (models.empty()) throw DimensionError("build_transform_bundle: no models");
    if (static_cast<Eigen::Index>(models.size()) != w.w.size())
        throw DimensionError("build_transform_bundle: weight count differs from model count");
    const int n = models.front().n();
    for (const auto& m : models)
        if (m.n() != n) throw DimensionError("build_transform_bundle: model dimensions differ");

    TransformBundle bundle;
    bundle.w = w;
    bundle.T_inv.reserve(models.size());
    Matrix mixture = Matrix::Zero(n, n);
    for (size_t i = 0; i < models.size(); ++i) {
        bundle.T_inv.push_back(models[i].T_inv);
        mixture += w.w[static_cast<Eigen::Index>(i)] * models[i].T_inv;
    }

    const Matrix mixture_inv = invert(mixture);
    const double cond = cond_1norm(mixture, mixture_inv);
    if (!std::isfinite(cond) || cond > cond_limit) throw SingularMixture(cond);

    bundle.T_p = mixture_inv;
    bundle.S.reserve(models.size());
    for (size_t i = 0; i < models.size(); ++i) bundle.S.push_back(bundle.T_p * bundle.T_inv[i]);
    return bundle;
}

CanonicalReconstruction reconstruct_canonical_plant(const TransformBundle& bundle,
                                                    const std::vector<CanonicalForm>& models) {
    if (models.size() != bundle.S.size())
        throw DimensionError("reconstruct_canonical_plant: model count differs from bundle");
    const int n = bundle.n();

    CanonicalReconstruction rec;
    rec.A_bar = Matrix::Zero(n, n);
    Vector b_mix = Vector::Zero(n);
    for (size_t i = 0; i < models.size(); ++i) {
        const double wi = bundle.w.w[static_cast<Eigen::Index>(i)];
        const Matrix S_inv = invert(bundle.S[i]);
        rec.A_bar += wi * (bundle.S[i] * models[i].A_bar * S_inv);
        b_mix += wi * (bundle.S[i] * models[i].b_bar);
    }
    rec.b_bar = Vector::Zero(n);
    rec.b_bar[n - 1] = 1.0;
    rec.b_residual = (b_mix - rec.b_bar).cwiseAbs().maxCoeff();
    return rec;
}

ConsistencyReport verify_companion_consistency(const Matrix& A_bar_p,
                                               const std::vector<CanonicalForm>& models,
                                               const SimplexWeights& w, double tol) {
    const int n = static_cast<int>(A_bar_p.rows());
    ConsistencyReport rep;
    rep.structure_residual = companion_structure_residual(A_bar_p);

    // Oracle: canonicalize the mixed original-coordinate pair directly.
    Matrix A_mix = Matrix::Zero(n, n);
    Vector b_mix = Vector::Zero(n);
    for (size_t i = 0; i < models.size(); ++i) {
        const double wi = w.w[static_cast<Eigen::Index>(i)];
        A_mix += wi * models[i].original_A();
        b_mix += wi * models[i].original_b();
    }
    const CanonicalForm direct = to_canonical(A_mix, b_mix);

    const double scale = std::max(1.0, direct.A_bar.cwiseAbs().maxCoeff());
    rep.full_residual = (A_bar_p - direct.A_bar).cwiseAbs().maxCoeff() / scale;
    rep.last_row_residual =
        (A_bar_p.row(n - 1) - direct.A_bar.row(n - 1)).cwiseAbs().maxCoeff() / scale;
    rep.structure_ok = rep.structure_residual <= tol;
    rep.last_row_ok = rep.last_row_residual <= tol;
    return rep;
}

}  // namespace mmas
