#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "run_config.hpp"

namespace dlab::cli {

int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_table(const RunConfig& cfg, std::ostream& out);

// Computes every requested time before writing anything; the CSV appears only
// if the whole run clears the overflow precheck.
int cmd_simulate(const RunConfig& cfg, const std::string& out_path, bool dump_modes);

struct VerifyOptions {
    std::string which;
    int trials = 200;
    std::uint64_t seed = 0;
    bool ablate = false;
    std::string out_path;              // optional grid CSV
    const RunConfig* config = nullptr; // optional: focus the suite on one equation
};

// Prints the JSON report; returns 0 iff every case passed.
int cmd_verify(const VerifyOptions& opt, std::ostream& out);

int cmd_growth(const RunConfig& cfg, int xi_max, std::ostream& out);

} // namespace dlab::cli
