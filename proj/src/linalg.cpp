#include "mmas/linalg.hpp"

#include <Eigen/SVD>

#include "mmas/errors.hpp"

namespace mmas {

Matrix invert(const Matrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("invert: matrix must be square");
    const auto n = A.rows();
    Eigen::PartialPivLU<Matrix> lu(A);
    Matrix X = lu.solve(Matrix::Identity(n, n));
    // One step of iterative refinement.
    X += X * (Matrix::Identity(n, n) - A * X);
    return X;
}

double cond_1norm(const Matrix& A, const Matrix& A_inv) {
    auto norm1 = [](const Matrix& M) { return M.cwiseAbs().colwise().sum().maxCoeff(); };
    return norm1(A) * norm1(A_inv);
}

double singular_value_ratio(const Matrix& M) {
    if (M.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

double companion_structure_residual(const Matrix& A_bar) {
    const int n = static_cast<int>(A_bar.rows());
    double worst = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double expected = (j == i + 1) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(A_bar(i, j) - expected));
        }
    }
    return worst;
}

}  // namespace mmas
