#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dlab/coefficients.hpp"

namespace dlab {

struct CheckReport {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
    std::vector<std::pair<std::string, double>> details; // (label, residual)
    std::string note;
};

// Structure conditions on the coefficients themselves (no simulation):
//
// hamiltonian_check: Im a_j = 0 for 1 <= j <= 2m-1 and b_{2n-1} = 0 for
// 1 <= n <= m.  Passing specs are Dispersive.
CheckReport hamiltonian_check(const EquationSpec& spec, double zero_tol_rel = 1e-12);

// mass_conservation_check: the literal condition is Im a_j = 0 for
// 1 <= j <= 2m-1 and b_{2n} = 0 for 1 <= n <= m; `passed` reports it.  The
// strict variant additionally needs Im a_{2m} = 0 (the zeroth-order term
// contributes -2 Im a_{2m} ||u||^2 to d/dt ||u||^2) and is recorded in
// details["strict"] and the note.  Exact norm conservation under evolution
// requires strict.
CheckReport mass_conservation_check(const EquationSpec& spec, double zero_tol_rel = 1e-12);

// Identity suite: lambda_{2j} = lambda_plus_{2j} + lambda_minus_{2j},
// lambda_{2k-1} = lambda_plus_{2k-1} - lambda_minus_{2k-1}, and
// gamma_j = alpha_{2j}, evaluated on one spec.
CheckReport lambda_split_identity_check(const EquationSpec& spec, double tol = 1e-10);

// Same identities over `trials` random specs of order m.
CheckReport lambda_split_identity_suite(int m, int trials, std::uint64_t seed, double tol = 1e-10);

// Dual evaluation of the lambda_minus recursion
//
//   lambda_minus_{j+1} = -(1/2) sum_{l=1}^{j-1} (1+(-1)^l) (Re a_l) lambda_minus_{j+1-l}
//                        -(1/2) sum_{l=1}^{j-1} sum_{k=1}^{j-l} (1+(-1)^l) (Im a_l) Re(conj(b_{j-l-k+1}) alpha_k)
//
// for 1 <= j <= 2(m-1), against the values from lambda_pm_sequences, on the
// given spec and on `trials` random specs of the same order.
CheckReport lambda_minus_recursion_check(const EquationSpec& spec, int trials,
                                         std::uint64_t seed, double tol = 1e-10);

// Constraint-surface sampler: draws random coefficients, then solves
// Im a_{2j} (in increasing j) so that lambda_{2j} = 0 for 1 <= j <= jstar.
// Checks the implied collapse: Im a_{2j} = 0 and lambda_plus_{2j} = 0 for
// j <= jstar, lambda_minus_j = 0 for j <= min(2 jstar + 3, 2m-1), and the
// next even entries reduce to lambda_{2jstar+2} = 2 Im a_{2jstar+2},
// lambda_{2jstar+4} = 2 Im a_{2jstar+4} (where those indices exist).
// Requires 1 <= jstar <= m-1.
CheckReport lambda_constraint_check(int m, int jstar, int trials,
                                    std::uint64_t seed, double tol = 1e-10);

} // namespace dlab
