#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dlab/coefficients.hpp"
#include "dlab/mat2.hpp"
#include "dlab/mode.hpp"

namespace dlab {

// A quadratic energy density: for each pair frequency xi >= 1 a Hermitian
// matrix A(xi), the density of the functional on (u^(xi), conj u^(-xi)).
struct QuadraticForm {
    std::function<Mat2(double)> assemble;
    std::string description;
};

enum class Side { Plus, Minus };

// Densities of the three energies whose time derivatives the residuals below
// test.  ablate drops the pairing corrections (gamma / alpha / beta).
QuadraticForm full_energy_form(const CoefficientTable& table, bool ablate = false);
QuadraticForm projected_energy_form(const CoefficientTable& table, Side side, bool ablate = false);
QuadraticForm twisted_energy_form(const CoefficientTable& table, int jstar, bool ablate = false);

// d/dt of U* A U along d/dt U = i M U, as a matrix: R = i (A M - M* A).
Mat2 derivative_form(const EquationSpec& spec, const QuadraticForm& form, double xi);

// Derivative of the whole-line energy density plus its dissipation terms:
//
//   R(xi) = i(A M - M* A) + sum_{j=1}^{m-1} lambda_{2j} xi^{2(m-j)} I
//                         + sum_{j=1}^{m}   lambda_{2j-1} xi^{2(m-j)+1} diag(1, -1),
//
// A = I + sum_j antidiag(gamma_j xi^{-2j}).  Bounded in xi when the gamma
// corrections are in place; ablate shows the uncancelled growth.
//
// The three residual evaluators recompute the coefficient sequences from the
// spec in 128-bit floats and assemble in that precision: the cancellations
// remove xi^{2m-1}-sized terms, which double cannot resolve past m = 3 on the
// dyadic grid.  The table argument supplies jstar (twisted case) only.
Mat2 full_energy_residual(const EquationSpec& spec, const CoefficientTable& table,
                          double xi, bool ablate = false);

// Same for the half-line energies.  Side::Plus:
//   A = diag(1,0) + sum_j antidiag((alpha_j / 2) xi^{-j}),
//   R = i(A M - M* A) + sum_j xi^{2m-j} diag(lambda_plus_j, lambda_minus_j);
// Side::Minus mirrors with (-1)^j on the corrections and the lambdas swapped:
//   A = diag(0,1) + sum_j antidiag((-1)^j (alpha_j / 2) xi^{-j}),
//   R = i(A M - M* A) + sum_j (-1)^j xi^{2m-j} diag(lambda_minus_j, lambda_plus_j).
Mat2 projected_energy_residual(const EquationSpec& spec, const CoefficientTable& table,
                               double xi, Side side, bool ablate = false);

// Twisted plus-side energy for an elliptic spec with index jstar:
//
//   A_tw = A_plus + sum_k beta_plus_k xi^{-(k+2)} A_minus,
//   R    = i(A_tw M - M* A_tw) + lambda_plus_{2 jstar - 1} xi^{2(m-jstar)+1} diag(1, 0),
//
// normalized by the admissible density envelope diag(max(1, xi^{2(m-jstar)}), 1):
// the returned matrix is D^{-1} R D^{-1} with D = diag(max(1, xi^{m-jstar}), 1),
// so a true bound means the result stays O(1).  Requires table.jstar
// (InvalidConfig otherwise); ablate zeroes beta only.
Mat2 twisted_energy_residual(const EquationSpec& spec, const CoefficientTable& table,
                             double xi, bool ablate = false);

struct EstimateReport {
    std::string name;
    std::vector<double> xi_grid;
    std::vector<double> norms; // residual operator norm per grid point
    double sup_norm = 0.0;
    double growth_fit = 0.0;   // least-squares slope of log norm vs log xi
    bool passed = false;       // finite sup and growth_fit <= 0.1
};

// Default grid 2^0 .. 2^10.
std::vector<double> default_xi_grid();

// Fitted polynomial degree of the norms in xi: least-squares slope of
// log(norm) against log(xi) over the tail of the grid (upper half, capped at
// the last four points).  The head is excluded because the 1/xi-sized
// correction terms have not decayed there yet; a bounded curve with a low-xi
// transient and an asymptotically growing curve with a flat head would
// otherwise both land between the 0.1 / 0.9 decision thresholds.  0 when the
// tail norms are negligibly small (nothing grows).
double growth_fit(const std::vector<double>& xi, const std::vector<double>& norms);

EstimateReport scan_residual(const std::string& name,
                             const std::function<Mat2(double)>& residual,
                             const std::vector<double>& xi_grid = default_xi_grid());

// Forward log-modulus rates of the two pair components, xi = 1..xi_max.
// rate_plus belongs to the eigenvector dominating the first component (the
// +xi side); flagged rows had a defective or ambiguous eigenvector split.
struct ScanRow {
    double xi = 0.0;
    double rate_plus = 0.0;
    double rate_minus = 0.0;
    bool flagged = false;
};
std::vector<ScanRow> smoothing_rate_scan(const EquationSpec& spec, int xi_max);

} // namespace dlab
