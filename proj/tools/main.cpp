#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dlab/errors.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace {

// Exit 1 (verification failure) comes straight out of cmd_verify.
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitOverflow = 4;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dispersive-lab: classify, tabulate, simulate and verify one-dimensional "
                 "constant-coefficient evolution equations on the torus"};
    app.require_subcommand(1);

    std::string config_path, out_path, which;
    int trials = 200;
    std::uint64_t seed = 0;
    int xi_max = 64;
    bool dump_modes = false;
    bool ablate = false;

    auto* classify = app.add_subcommand("classify", "Type of the equation and its lambda sequence");
    classify->add_option("--config", config_path, "JSON equation config")->required();

    auto* table = app.add_subcommand("table", "Full coefficient table (gamma/lambda/alpha/beta)");
    table->add_option("--config", config_path, "JSON equation config")->required();

    auto* simulate = app.add_subcommand("simulate", "Evolve the configured state; write norm CSV");
    simulate->add_option("--config", config_path, "JSON config with domain/initial/times")
        ->required();
    simulate->add_option("--out", out_path, "output CSV path")->required();
    simulate->add_flag("--dump-modes", dump_modes, "also write per-mode moduli CSVs");

    auto* verify = app.add_subcommand("verify", "Run a coefficient-identity or estimate suite");
    verify->add_option("check", which,
                       "one of remark21, lemma22, lemma23, prop21, lemma21, prop22, lemma31")
        ->required();
    verify->add_option("--config", config_path, "focus the suite on this equation");
    verify->add_option("--trials", trials, "random draws per case");
    verify->add_option("--seed", seed, "base seed for all draws");
    verify->add_flag("--ablate-correction", ablate, "drop the pairing corrections");
    verify->add_option("--out", out_path, "write the per-case grid as CSV");

    auto* growth = app.add_subcommand("growth", "Per-mode forward growth rates, xi = 1..xi-max");
    growth->add_option("--config", config_path, "JSON equation config")->required();
    growth->add_option("--xi-max", xi_max, "largest frequency scanned (>= 4)");
    growth->add_option("--out", out_path, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*classify) return dlab::cli::cmd_classify(dlab::cli::load_run_config(config_path),
                                                      std::cout);
        if (*table) return dlab::cli::cmd_table(dlab::cli::load_run_config(config_path),
                                                std::cout);
        if (*simulate)
            return dlab::cli::cmd_simulate(dlab::cli::load_run_config(config_path), out_path,
                                           dump_modes);
        if (*verify) {
            dlab::cli::VerifyOptions opt;
            opt.which = which;
            opt.trials = trials;
            opt.seed = seed;
            opt.ablate = ablate;
            opt.out_path = out_path;
            dlab::cli::RunConfig cfg;
            if (!config_path.empty()) {
                cfg = dlab::cli::load_run_config(config_path);
                opt.config = &cfg;
            }
            return dlab::cli::cmd_verify(opt, std::cout);
        }
        if (*growth) {
            const auto cfg = dlab::cli::load_run_config(config_path);
            if (out_path.empty()) return dlab::cli::cmd_growth(cfg, xi_max, std::cout);
            std::ofstream f(out_path);
            if (!f) throw dlab::InvalidConfig("cannot open output file \"" + out_path + "\"");
            return dlab::cli::cmd_growth(cfg, xi_max, f);
        }
    } catch (const dlab::InvalidConfig& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dlab::ModeOverflow& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
