#pragma once

#include <complex>

#include "dlab/errors.hpp"

namespace dlab {

using cplx = std::complex<double>;

struct Vec2 {
    cplx v0{0.0, 0.0};
    cplx v1{0.0, 0.0};

    double norm() const;
};

// Dense complex 2x2 matrix, row major.
struct Mat2 {
    cplx e00{0.0, 0.0}, e01{0.0, 0.0};
    cplx e10{0.0, 0.0}, e11{0.0, 0.0};

    static Mat2 identity() { return {{1.0, 0.0}, {}, {}, {1.0, 0.0}}; }
    static Mat2 diag(cplx d0, cplx d1) { return {d0, {}, {}, d1}; }
    // [[0, c], [conj(c), 0]] — the Hermitian off-diagonal block used by every
    // pairing correction.
    static Mat2 antidiag(cplx c) { return {{}, c, std::conj(c), {}}; }

    cplx trace() const { return e00 + e11; }
    cplx det() const { return e00 * e11 - e01 * e10; }
    Mat2 adjoint() const;

    double frobenius() const;
    double op_norm() const;  // largest singular value, closed form
    double max_abs() const;  // entrywise max modulus
    bool is_hermitian(double tol) const;
};

Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(cplx s, const Mat2& x);
Vec2 operator*(const Mat2& x, const Vec2& v);

// Eigenvalue split A = mu*I + B with B traceless; B's eigenvalues are
// +/- delta, delta = sqrt(-det B) (principal branch).
struct MuDelta {
    cplx mu;
    cplx delta;
};
MuDelta eigen_mu_delta(const Mat2& a);

// Natural log of the modulus bound exp(A) can reach: Re(mu) + |Re(delta)|.
double predicted_log_modulus(const Mat2& a);

// Closed-form exponential: exp(A) = e^mu (cosh(delta) I + sinhc(delta) B).
// sinhc and cosh switch to a 6-term Taylor series when |delta| < 1e-4, so the
// defective (delta -> 0) limit is seamless.  Throws ModeOverflow (xi unset)
// when predicted_log_modulus(A) > 700 or a non-finite entry is produced.
Mat2 mat_exp_2x2(const Mat2& a);

} // namespace dlab
