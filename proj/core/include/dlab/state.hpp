#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dlab/coefficients.hpp"
#include "dlab/equation.hpp"

namespace dlab {

// Truncated Fourier coefficients on the torus, xi in [-K, K], with the
// normalization ||e^{i xi x}||_{L^2} = 1 (so norms are plain little-l2 sums).
struct SpectralState {
    int K = 0;
    std::vector<cplx> c; // size 2K+1, c[K + xi] = u^(xi)
    double time_tag = 0.0;

    cplx at(int xi) const { return c[static_cast<std::size_t>(K + xi)]; }
    void set(int xi, cplx v) { c[static_cast<std::size_t>(K + xi)] = v; }
};

SpectralState zero_state(int K);

// Explicit modes; entries outside [-K, K] are rejected (InvalidConfig).
SpectralState state_from_modes(int K, const std::vector<std::pair<int, cplx>>& modes);

// u^(xi) = <xi>^{-s - 1/2 - eps} * (random unit complex), <xi> = sqrt(1+xi^2).
// Lies in H^s but in no better Sobolev space as K -> inf.  A mode's draw
// depends only on (seed, xi), so truncations at different K agree on shared
// modes.
SpectralState random_hs_state(int K, double s, std::uint64_t seed, double epsilon = 0.05);

// Single unit mode at xi.
SpectralState delta_state(int K, int xi);

enum class Projection { Plus, Minus, Zero, NonZero }; // xi>=1, xi<=-1, xi=0, xi!=0
SpectralState project(const SpectralState& f, Projection p);

// Fourier multipliers: Bessel <xi>^s, Riesz |xi|^s, Dpow xi^k (signed, integer
// exponent k).  Riesz with s<0 and Dpow with k<0 are undefined on the xi=0
// mode: a nonzero u^(0) is an error unless auto_project_nonzero is set, which
// applies the xi!=0 projection first.
enum class MultiplierKind { Bessel, Riesz, Dpow };
SpectralState multiplier(const SpectralState& f, MultiplierKind kind, double s,
                         bool auto_project_nonzero = false);

double l2_norm(const SpectralState& f);
double sobolev_norm(const SpectralState& f, double s); // sqrt(sum <xi>^{2s} |u^|^2)

// Evolves every pair (u^(xi), conj u^(-xi)), xi = 0..K, by the closed-form
// mode solution; time_tag advances by t.  Throws ModeOverflow (with the
// offending xi) before any mode has been written.
SpectralState evolve_state(const EquationSpec& spec, const SpectralState& f, double t);

// Smallest doubling-search weight N = 2C (floor 1) such that the pairing
// correction satisfies, per mode pair on xi in [1, max(K, 1024)],
//
//   | sum_j Re gamma_j <pair density at xi> |
//       <= (1/2) (|u^(xi)|^2 + |u^(-xi)|^2) + C xi^{-2m} (|u^(xi)|^2 + |u^(-xi)|^2)
//
// for every pair value.  With N = 2C the sandwich
// (1/2) E <= ||f||^2 + N ||dx^{-m} P_{!=0} f||^2 <= 2 E holds exactly.
double select_N(const EquationSpec& spec, int K);

struct EnergyReport {
    double l2_sq = 0.0;
    double low_freq_sq = 0.0;      // ||dx^{-m} P_{!=0} f||^2
    double correction_value = 0.0; // sum_j Re gamma_j <...>
    double E_value = 0.0;          // l2_sq + N * low_freq_sq + correction_value
    double N_used = 0.0;
    std::map<double, double> sobolev; // s -> ||f||_{H^s} for s in {0, 1/2, 1}
};

// E(f; N) = ||f||^2 + N ||dx^{-m} P_{!=0} f||^2
//           + sum_{j=1}^{m-1} Re gamma_j < D^{-2j} P_{!=0} conj(f), P_{!=0} f >.
EnergyReport energy(const EquationSpec& spec, const SpectralState& f, double N);

// Correction functionals attached to the split energies:
//
//   F_k^-(u) = || |dx|^{-(k+2)/2} P^- u ||^2 + sum_j Re alpha_j < D^{-j} |dx|^{-k-2} conj(P^+ u), P^- u >
//   F_k^+(u) = || |dx|^{-(k+2)/2} P^+ u ||^2 + sum_j Re alpha_j < D^{-j} |dx|^{-k-2} conj(P^- u), P^+ u >
//   G^+(u)   = sum_j Re alpha_j < D^{-j} conj(P^- u), P^+ u > + sum_k beta_plus_k  F_k^-(u)
//   G^-(u)   = sum_j Re alpha_j < D^{-j} conj(P^+ u), P^- u > + sum_k beta_minus_k F_k^+(u)
//
// with k = 1..2(m - jstar - 1).  Requires table.beta when that range is
// nonempty (InvalidConfig otherwise; jstar must lie in [1, m]).
struct CorrectionTerms {
    double G_plus = 0.0;
    double G_minus = 0.0;
    std::vector<double> F_minus; // F_k^-
    std::vector<double> F_plus;  // F_k^+
};
CorrectionTerms correction_terms(const SpectralState& u, const CoefficientTable& table, int jstar);

// CLI state format: {"K": int, "modes": [[xi, re, im], ...], "t": real},
// modes sorted by xi, exact zeros omitted.
std::string state_to_json(const SpectralState& f);
SpectralState state_from_json(const std::string& text); // throws InvalidConfig

} // namespace dlab
