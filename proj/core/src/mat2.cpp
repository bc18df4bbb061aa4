#include "dlab/mat2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace dlab {

namespace {

// cosh(d) and sinh(d)/d as truncated even series in d^2; the remainder is
// below 1e-30 for |d| < 1e-4.
cplx cosh_series(cplx d2) {
    cplx term{1.0, 0.0};
    cplx sum = term;
    for (int k = 1; k <= 6; ++k) {
        term *= d2 / static_cast<double>((2 * k - 1) * (2 * k));
        sum += term;
    }
    return sum;
}

cplx sinhc_series(cplx d2) {
    cplx term{1.0, 0.0};
    cplx sum = term;
    for (int k = 1; k <= 6; ++k) {
        term *= d2 / static_cast<double>((2 * k) * (2 * k + 1));
        sum += term;
    }
    return sum;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string overflow_message(double log_modulus) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "mode exponential overflows: log-modulus %.3g exceeds 700",
                  log_modulus);
    return buf;
}

} // namespace

double Vec2::norm() const { return std::sqrt(std::norm(v0) + std::norm(v1)); }

Mat2 Mat2::adjoint() const {
    return {std::conj(e00), std::conj(e10), std::conj(e01), std::conj(e11)};
}

double Mat2::frobenius() const {
    return std::sqrt(std::norm(e00) + std::norm(e01) + std::norm(e10) + std::norm(e11));
}

double Mat2::op_norm() const {
    // sigma_max^2 = (T + sqrt(T^2 - 4 DD)) / 2 with T the squared Frobenius
    // norm and DD = |det|^2.
    const double t = std::norm(e00) + std::norm(e01) + std::norm(e10) + std::norm(e11);
    const double dd = std::norm(det());
    const double disc = std::max(0.0, t * t - 4.0 * dd);
    return std::sqrt(std::max(0.0, 0.5 * (t + std::sqrt(disc))));
}

double Mat2::max_abs() const {
    return std::max(std::max(std::abs(e00), std::abs(e01)),
                    std::max(std::abs(e10), std::abs(e11)));
}

bool Mat2::is_hermitian(double tol) const {
    return std::abs(e00.imag()) <= tol && std::abs(e11.imag()) <= tol &&
           std::abs(e01 - std::conj(e10)) <= tol;
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.e00 + y.e00, x.e01 + y.e01, x.e10 + y.e10, x.e11 + y.e11};
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.e00 - y.e00, x.e01 - y.e01, x.e10 - y.e10, x.e11 - y.e11};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.e00 * y.e00 + x.e01 * y.e10, x.e00 * y.e01 + x.e01 * y.e11,
            x.e10 * y.e00 + x.e11 * y.e10, x.e10 * y.e01 + x.e11 * y.e11};
}

Mat2 operator*(cplx s, const Mat2& x) {
    return {s * x.e00, s * x.e01, s * x.e10, s * x.e11};
}

Vec2 operator*(const Mat2& x, const Vec2& v) {
    return {x.e00 * v.v0 + x.e01 * v.v1, x.e10 * v.v0 + x.e11 * v.v1};
}

MuDelta eigen_mu_delta(const Mat2& a) {
    const cplx mu = 0.5 * a.trace();
    // det(A - mu I) = det(A) - mu^2 for 2x2, so delta^2 = mu^2 - det(A).
    const cplx delta = std::sqrt(mu * mu - a.det());
    return {mu, delta};
}

double predicted_log_modulus(const Mat2& a) {
    const auto [mu, delta] = eigen_mu_delta(a);
    return mu.real() + std::abs(delta.real());
}

Mat2 mat_exp_2x2(const Mat2& a) {
    const auto [mu, delta] = eigen_mu_delta(a);
    const double log_mod = mu.real() + std::abs(delta.real());
    if (log_mod > 700.0) throw ModeOverflow(0.0, log_mod, overflow_message(log_mod));

    const Mat2 b = a - Mat2::diag(mu, mu);
    Mat2 r;
    if (std::abs(delta) < 1e-4) {
        const cplx d2 = delta * delta;
        const cplx ch = cosh_series(d2);
        const cplx sc = sinhc_series(d2);
        r = std::exp(mu) * (Mat2::diag(ch, ch) + sc * b);
    } else if (std::abs(delta.real()) <= 1.0) {
        // mild spread: cosh/sinh lose at most e^2 of headroom
        const cplx ch = std::cosh(delta);
        const cplx sc = std::sinh(delta) / delta;
        r = std::exp(mu) * (Mat2::diag(ch, ch) + sc * b);
    } else if (a.e01 == cplx{0.0, 0.0} || a.e10 == cplx{0.0, 0.0}) {
        // triangular with a wide exponent spread: e^mu cosh(delta) +-
        // e^mu sinh(delta) would erase the decaying diagonal entry, and the
        // eigenvector split below would pollute it with the rounding of
        // b/delta; both diagonal entries are plain exponentials here
        const cplx p = std::exp(a.e00);
        const cplx q = std::exp(a.e11);
        const cplx dd = (p - q) / (a.e00 - a.e11);
        r = Mat2{p, a.e01 * dd, a.e10 * dd, q};
    } else {
        // wide spread, full matrix: assemble from the two eigen-exponentials;
        // p - q is well conditioned because |Re delta| > 1
        const cplx p = std::exp(mu + delta);
        const cplx q = std::exp(mu - delta);
        const cplx c0 = b.e00 / delta;
        const cplx sdiff = 0.5 * (p - q) / delta;
        r.e00 = 0.5 * ((1.0 + c0) * p + (1.0 - c0) * q);
        r.e11 = 0.5 * ((1.0 - c0) * p + (1.0 + c0) * q);
        r.e01 = sdiff * b.e01;
        r.e10 = sdiff * b.e10;
    }
    if (!finite(r.e00) || !finite(r.e01) || !finite(r.e10) || !finite(r.e11))
        throw ModeOverflow(0.0, log_mod, overflow_message(log_mod));
    return r;
}

} // namespace dlab
