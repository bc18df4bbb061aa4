#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlab/equation.hpp"

namespace dlab {

// Recursive coefficient sequences attached to an EquationSpec.  All of them
// are 1-based in the formulas; the _at accessors give the 1-based view.
//
//   gamma_j = b_{2j} - sum_{k=1}^{j-1} conj(a_{2(j-k)}) gamma_k,          1 <= j <= m-1
//
//   lambda_{2j}   = 2 Im a_{2j}   - 2 sum_{k=1}^{j-1} Im(conj(b_{2(j-k)})   gamma_k),  1 <= j <= m-1
//   lambda_{2j-1} = 2 Im a_{2j-1} + 2 sum_{k=1}^{j-1} Im(conj(b_{2(j-k)-1}) gamma_k),  1 <= j <= m
//
//   alpha_j = b_j - (1/2) sum_{k=1}^{j-1} (1 + (-1)^{j-k}) conj(a_{j-k}) alpha_k,      1 <= j <= 2m-1
//
//   lambda_plus_j  = 2 Im a_j + sum_{k=1}^{j-1} (-1)^{j-k+1} Im(conj(b_{j-k}) alpha_k)
//   lambda_minus_j =          - sum_{k=1}^{j-1}               Im(conj(b_{j-k}) alpha_k)
//
// Empty sums are zero.
std::vector<cplx> gamma_sequence(const EquationSpec& spec);
std::vector<double> lambda_sequence(const EquationSpec& spec); // flat, lambda[i-1] = lambda_i, i = 1..2m-1
std::vector<cplx> alpha_sequence(const EquationSpec& spec);

struct LambdaPM {
    std::vector<double> plus;  // lambda_plus_j,  j = 1..2m-1
    std::vector<double> minus; // lambda_minus_j, j = 1..2m-1
};
LambdaPM lambda_pm_sequences(const EquationSpec& spec);

// Tail-correction weights.  Both lower-triangular systems share the diagonal
// pivot lambda_plus_{2 jstar - 1}:
//
//   lambda_minus_{2 jstar + k + 1} = sum_{j=1}^{k} (-1)^{k-j} lambda_plus_{2 jstar + k - j - 1} beta_plus_j
//   lambda_minus_{2 jstar + k + 1} = sum_{j=1}^{k} (-1)^{k}   lambda_plus_{2 jstar + k - j - 1} beta_minus_j
//
// for 1 <= k <= 2(m - jstar - 1).  For jstar in {m-1, m} the systems are
// empty and both lists come back empty.
struct BetaPair {
    std::vector<double> plus;
    std::vector<double> minus;
};

enum class EquationKind { Dispersive, Parabolic, Elliptic };

// Forward-in-time smoothing pattern implied by the first surviving lambda.
enum class SmoothingPattern {
    None,                     // dispersive: L2 evolution both directions
    ForwardHalfLine,          // parabolic, lambda > 0: smooths on [0, inf)
    BackwardHalfLine,         // parabolic, lambda < 0: smooths on (-inf, 0]
    PlusForwardMinusBackward, // elliptic, lambda > 0
    PlusBackwardMinusForward, // elliptic, lambda < 0
};

struct Classification {
    EquationKind kind = EquationKind::Dispersive;
    // For parabolic the first nonzero lambda sits at index 2*jstar, for
    // elliptic at 2*jstar - 1.  Absent for dispersive.
    std::optional<int> jstar;
    int sign = 0; // sign of the first nonzero lambda, 0 if none
    SmoothingPattern smoothing = SmoothingPattern::None;
    double zero_tolerance = 0.0; // absolute threshold that was applied
};

// Scans lambda_1..lambda_{2m-1} for the first entry with |lambda| > tol,
// tol = zero_tol_rel * spec.scale().
Classification classify(const EquationSpec& spec, double zero_tol_rel = 1e-12);

struct CoefficientTable {
    int m = 1;
    std::vector<cplx> gamma;          // m-1 entries
    std::vector<double> lambda;       // 2m-1 entries
    std::vector<cplx> alpha;          // 2m-1 entries
    std::vector<double> lambda_plus;  // 2m-1 entries
    std::vector<double> lambda_minus; // 2m-1 entries
    std::optional<int> jstar;         // set when classified elliptic
    std::optional<BetaPair> beta;     // set when elliptic; empty lists for jstar in {m-1, m}

    cplx gamma_at(int j) const { return gamma[static_cast<std::size_t>(j - 1)]; }
    double lambda_at(int j) const { return lambda[static_cast<std::size_t>(j - 1)]; }
    cplx alpha_at(int j) const { return alpha[static_cast<std::size_t>(j - 1)]; }
    double lambda_plus_at(int j) const { return lambda_plus[static_cast<std::size_t>(j - 1)]; }
    double lambda_minus_at(int j) const { return lambda_minus[static_cast<std::size_t>(j - 1)]; }
};

// Computes every sequence; beta is attached for elliptic classifications.
CoefficientTable make_table(const EquationSpec& spec, double zero_tol_rel = 1e-12);

// Solves the triangular systems above.  Throws DegenerateBeta when the pivot
// |lambda_plus_{2 jstar - 1}| <= pivot_tol, InvalidConfig when jstar is out of
// range (1 <= jstar <= m).
BetaPair beta_sequences(const CoefficientTable& table, int jstar, double pivot_tol);

const char* kind_name(EquationKind k);
const char* smoothing_name(SmoothingPattern p);

} // namespace dlab
