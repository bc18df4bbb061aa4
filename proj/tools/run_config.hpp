#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dlab/equation.hpp"
#include "dlab/state.hpp"

namespace dlab::cli {

// Parsed run configuration.  Only `m` is mandatory; each command validates
// the sections it needs (simulate needs domain/initial/times, classify only
// the coefficients).
struct RunConfig {
    EquationSpec spec;
    double zero_tolerance = 1e-12; // relative to the coefficient scale
    std::uint64_t seed = 0;

    bool has_domain = false;
    int cutoff = 0;

    enum class InitialKind { None, Modes, RandomHs, Delta };
    InitialKind initial_kind = InitialKind::None;
    std::vector<std::pair<int, cplx>> modes;
    double hs_s = 0.0;
    std::uint64_t hs_seed = 0;
    bool hs_seed_set = false;
    double hs_epsilon = 0.05;
    int delta_xi = 0;

    bool has_times = false;
    std::vector<double> times;
};

RunConfig load_run_config(const std::string& path); // throws InvalidConfig

// Builds the configured initial state; requires domain + initial sections.
SpectralState initial_state(const RunConfig& cfg); // throws InvalidConfig

} // namespace dlab::cli
