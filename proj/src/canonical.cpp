#include "mmas/canonical.hpp"

#include "mmas/errors.hpp"

namespace mmas {

Vector char_coeffs(const Matrix& A) {
    if (A.rows() != A.cols() || A.rows() < 1)
        throw DimensionError("char_coeffs: matrix must be square, n >= 1");
    const int n = static_cast<int>(A.rows());
    Vector c(n);  // ascending: c[j] multiplies s^j
    Matrix M = Matrix::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        const Matrix AM = A * M;
        const double coeff = -AM.trace() / static_cast<double>(k);
        c[n - k] = coeff;
        if (k < n) M = AM + coeff * Matrix::Identity(n, n);
    }
    return c;
}

Matrix controllability_matrix(const Matrix& A, const Vector& b) {
    if (A.rows() != A.cols()) throw DimensionError("controllability_matrix: A must be square");
    if (b.size() != A.rows()) throw DimensionError("controllability_matrix: b must be n x 1");
    const int n = static_cast<int>(A.rows());
    Matrix C(n, n);
    Vector col = b;
    for (int j = 0; j < n; ++j) {
        C.col(j) = col;
        if (j + 1 < n) col = A * col;
    }
    return C;
}

Matrix companion_from_coeffs(const Vector& c) {
    const int n = static_cast<int>(c.size());
    Matrix A = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) A(i, i + 1) = 1.0;
    for (int j = 0; j < n; ++j) A(n - 1, j) = -c[j];
    return A;
}

CanonicalForm to_canonical(const Matrix& A, const Vector& b, double tol) {
    const int n = static_cast<int>(A.rows());
    const Matrix C = controllability_matrix(A, b);
    const double ratio = singular_value_ratio(C);
    if (!(ratio > tol)) throw Uncontrollable(ratio);

    const Vector c = char_coeffs(A);

    // T^{-1} column recursion: v_n = b, v_j = A v_{j+1} + c_j b.
    Matrix T_inv(n, n);
    T_inv.col(n - 1) = b;
    for (int j = n - 1; j >= 1; --j) T_inv.col(j - 1) = A * T_inv.col(j) + c[j] * b;

    CanonicalForm cf;
    cf.T_inv = T_inv;
    cf.T = invert(T_inv);
    cf.A_bar = cf.T * A * T_inv;
    cf.b_bar = Vector::Zero(n);
    cf.b_bar[n - 1] = 1.0;
    cf.theta = c;
    return cf;
}

CanonicalForm to_canonical(const LinearSystem& sys, double tol) {
    if (sys.h() != 1)
        throw DimensionError("to_canonical: only single-input systems are supported (h == 1)");
    return to_canonical(sys.A, sys.B.col(0), tol);
}

}  // namespace mmas
