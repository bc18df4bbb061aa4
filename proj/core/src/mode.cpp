#include "dlab/mode.hpp"

#include <cmath>

#include "dlab/coefficients.hpp"
#include "dlab/errors.hpp"

namespace dlab {

ModeMatrix build_mode_matrix(const EquationSpec& spec, double xi) {
    Mat2 acc = Mat2::diag(cplx{1.0, 0.0}, cplx{-1.0, 0.0});
    for (int j = 1; j <= 2 * spec.m; ++j) {
        const double s = (j % 2 == 0) ? -1.0 : 1.0; // (-1)^{j+1}
        const cplx aj = spec.a_at(j);
        const cplx bj = spec.b_at(j);
        const Mat2 Xj{aj, bj, s * std::conj(bj), s * std::conj(aj)};
        acc = cplx{xi, 0.0} * acc + Xj;
    }
    return ModeMatrix{xi, acc};
}

ModePair evolve_mode(const EquationSpec& spec, const ModePair& pair, double t) {
    const Mat2 M = build_mode_matrix(spec, pair.xi).M;
    Mat2 E;
    try {
        E = mat_exp_2x2(cplx{0.0, t} * M);
    } catch (const ModeOverflow& e) {
        throw ModeOverflow(pair.xi, e.log_modulus, e.what());
    }
    const Vec2 v = E * Vec2{pair.u_plus, pair.u_minus_bar};
    return ModePair{pair.xi, v.v0, v.v1};
}

EigenExponents eigen_exponents(const EquationSpec& spec, double xi) {
    const Mat2 M = build_mode_matrix(spec, xi).M;
    const Mat2 A = cplx{0.0, 1.0} * M;
    const auto [mu, delta] = eigen_mu_delta(A);

    EigenExponents out;
    out.defect_flag = std::abs(delta) < 1e-4;

    // First-component share of the eigenvector for nu; the better-conditioned
    // of the two candidate columns of (A - nu I) adjugate is used.
    auto share = [&A](cplx nu) {
        const cplx a0 = A.e01, a1 = nu - A.e00;
        const cplx b0 = nu - A.e11, b1 = A.e10;
        const double na = std::norm(a0) + std::norm(a1);
        const double nb = std::norm(b0) + std::norm(b1);
        if (na == 0.0 && nb == 0.0) return 0.5; // scalar matrix
        return na >= nb ? std::norm(a0) / na : std::norm(b0) / nb;
    };

    const cplx nu_p = mu + delta;
    const cplx nu_m = mu - delta;
    const double sp = share(nu_p);
    const double sm = share(nu_m);
    out.tie_flag = std::abs(sp - sm) < 1e-6;
    if (sp >= sm) {
        out.mu1 = nu_p;
        out.mu2 = nu_m;
    } else {
        out.mu1 = nu_m;
        out.mu2 = nu_p;
    }
    out.growth1 = out.mu1.real();
    out.growth2 = out.mu2.real();
    return out;
}

double predicted_rate_diagonal(const EquationSpec& spec, double xi) {
    const auto lam = lambda_sequence(spec);
    double acc = 0.0;
    for (int j = 1; j <= 2 * spec.m - 1; ++j)
        acc += lam[static_cast<std::size_t>(j - 1)] * std::pow(xi, 2 * spec.m - j);
    return -0.5 * acc - spec.a_at(2 * spec.m).imag();
}

ModePair rk4_oracle(const EquationSpec& spec, const ModePair& pair, double t, double step) {
    if (!(step > 0.0)) throw InvalidConfig("rk4 oracle needs step > 0");
    if (t == 0.0) return pair;
    const double nsteps_d = std::ceil(std::abs(t) / step);
    if (nsteps_d > 1e7) throw InvalidConfig("rk4 oracle step count exceeds 1e7");
    const auto nsteps = static_cast<long>(nsteps_d);
    const double h = t / static_cast<double>(nsteps);

    const Mat2 A = cplx{0.0, 1.0} * build_mode_matrix(spec, pair.xi).M;
    Vec2 u{pair.u_plus, pair.u_minus_bar};
    for (long n = 0; n < nsteps; ++n) {
        const Vec2 k1 = A * u;
        const Vec2 k2 = A * Vec2{u.v0 + 0.5 * h * k1.v0, u.v1 + 0.5 * h * k1.v1};
        const Vec2 k3 = A * Vec2{u.v0 + 0.5 * h * k2.v0, u.v1 + 0.5 * h * k2.v1};
        const Vec2 k4 = A * Vec2{u.v0 + h * k3.v0, u.v1 + h * k3.v1};
        u.v0 += h / 6.0 * (k1.v0 + 2.0 * k2.v0 + 2.0 * k3.v0 + k4.v0);
        u.v1 += h / 6.0 * (k1.v1 + 2.0 * k2.v1 + 2.0 * k3.v1 + k4.v1);
    }
    return ModePair{pair.xi, u.v0, u.v1};
}

} // namespace dlab
