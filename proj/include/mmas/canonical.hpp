#pragma once

#include "mmas/model.hpp"

namespace mmas {

// Controllable canonical (companion) form of a single-input pair.
//
// Convention, fixed once and asserted throughout: with char_coeffs(A) = c =
// (c_0 ... c_{n-1}) for p_A(s) = s^n + c_{n-1} s^{n-1} + ... + c_0, the companion
// matrix carries 1s on the first superdiagonal and last row [-c_0 ... -c_{n-1}].
// theta stores (c_0 ... c_{n-1}); b_bar is e_n by construction.
struct CanonicalForm {
    Matrix T;      // canonical coordinates are x_bar = T x
    Matrix T_inv;
    Matrix A_bar;  // T A T^{-1}, numerically computed
    Vector b_bar;  // e_n, constructed
    Vector theta;

    int n() const { return static_cast<int>(T.rows()); }

    // Original-coordinate pair recovered from the stored transformation.
    Matrix original_A() const { return T_inv * A_bar * T; }
    Vector original_b() const { return T_inv * b_bar; }
};

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recurrence:
// returns c with p_A(s) = s^n + sum_k c_k s^k, c ascending in powers.
Vector char_coeffs(const Matrix& A);

// [b, Ab, ..., A^{n-1} b]; no rank decision here.
Matrix controllability_matrix(const Matrix& A, const Vector& b);

// Transform a controllable single-input pair to companion form. tol is the
// relative singular-value threshold on the controllability matrix.
CanonicalForm to_canonical(const Matrix& A, const Vector& b, double tol = 1e-10);
CanonicalForm to_canonical(const LinearSystem& sys, double tol = 1e-10);

// Companion matrix built directly from ascending coefficients (test aid and
// fixed-point reference).
Matrix companion_from_coeffs(const Vector& c);

}  // namespace mmas
