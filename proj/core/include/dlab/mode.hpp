#pragma once

#include "dlab/equation.hpp"
#include "dlab/mat2.hpp"

namespace dlab {

// Frequency-side pair system.  For the pair U_xi = (u^(xi), conj(u^(-xi)))
// the equation reads d/dt U = i M(xi) U with
//
//   M(xi) = sum_{j=0}^{2m} xi^{2m-j} X_j,
//   X_0 = diag(1, -1),
//   X_j = [[a_j, b_j], [s conj(b_j), s conj(a_j)]],  s = (-1)^{j+1}.
//
// Assembled by Horner in xi.
struct ModeMatrix {
    double xi = 0.0;
    Mat2 M;
};
ModeMatrix build_mode_matrix(const EquationSpec& spec, double xi);

// One evolving pair.  xi may be any finite real: the pair for -xi is the
// swap-conjugate of the pair for xi and both produce consistent evolutions.
struct ModePair {
    double xi = 0.0;
    cplx u_plus{0.0, 0.0};      // u^(xi)
    cplx u_minus_bar{0.0, 0.0}; // conj(u^(-xi))
};

// U(t) = exp(i t M(xi)) U(0).  Exact up to rounding; group law holds.
// Throws ModeOverflow with xi attached.
ModePair evolve_mode(const EquationSpec& spec, const ModePair& pair, double t);

struct EigenExponents {
    cplx mu1, mu2;       // eigenvalues of i M(xi); mu1 owns the eigenvector
                         // with the larger first-component share
    double growth1 = 0.0; // Re mu1: forward log-modulus rate of the xi side
    double growth2 = 0.0; // Re mu2: same for the -xi side
    bool defect_flag = false; // |delta| below the series-switch threshold
    bool tie_flag = false;    // component shares equal: assignment arbitrary
};
EigenExponents eigen_exponents(const EquationSpec& spec, double xi);

// -(1/2) sum_{j=1}^{2m-1} lambda_j xi^{2m-j} - Im a_{2m}.  Equals the exact
// per-mode modulus rate d/dt log|u^(t,xi)| when b == 0 (the system is then
// diagonal); for b != 0 it is only the diagonal prediction.
double predicted_rate_diagonal(const EquationSpec& spec, double xi);

// Classical fixed-step RK4 on d/dt U = i M(xi) U; the independent cross-check
// for evolve_mode.  Uses ceil(|t|/step) uniform steps (at most 1e7, else
// InvalidConfig).  step > 0.
ModePair rk4_oracle(const EquationSpec& spec, const ModePair& pair, double t, double step);

} // namespace dlab
