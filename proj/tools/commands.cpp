#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "dlab/checks.hpp"
#include "dlab/coefficients.hpp"
#include "dlab/errors.hpp"
#include "dlab/forms.hpp"
#include "dlab/mode.hpp"
#include "dlab/rng.hpp"
#include "dlab/state.hpp"

namespace dlab::cli {

namespace {

using nlohmann::ordered_json;

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json pair_of(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json pairs_of(const std::vector<cplx>& zs) {
    ordered_json arr = ordered_json::array();
    for (cplx z : zs) arr.push_back(pair_of(z));
    return arr;
}

// Max deviation of the solved beta weights from their defining relations
//   lambda_minus_{2j*+k+1} = sum_{j=1}^{k} (-1)^{k-j} lambda_plus_{2j*+k-j-1} beta_plus_j
// (and the (-1)^k variant for beta_minus).
double beta_substitution_residual(const CoefficientTable& table) {
    if (!table.jstar || !table.beta) return 0.0;
    const int jstar = *table.jstar;
    const auto& beta = *table.beta;
    double worst = 0.0;
    for (int k = 1; k <= static_cast<int>(beta.plus.size()); ++k) {
        const double target = table.lambda_minus_at(2 * jstar + k + 1);
        double sum_plus = 0.0, sum_minus = 0.0;
        for (int j = 1; j <= k; ++j) {
            const double lp = table.lambda_plus_at(2 * jstar + k - j - 1);
            const double sgn = ((k - j) % 2 == 0) ? 1.0 : -1.0;
            sum_plus += sgn * lp * beta.plus[static_cast<std::size_t>(j - 1)];
            sum_minus += ((k % 2 == 0) ? 1.0 : -1.0) * lp * beta.minus[static_cast<std::size_t>(j - 1)];
        }
        worst = std::max(worst, std::abs(target - sum_plus));
        worst = std::max(worst, std::abs(target - sum_minus));
    }
    return worst;
}

struct NamedSpec {
    std::string name;
    EquationSpec spec;
};

const cplx I{0.0, 1.0};

std::vector<NamedSpec> named_examples() {
    return {
        {"m1_dispersive", make_spec(1, {cplx{1.0, 0.0}}, {})},
        {"m2_elliptic_a3", make_spec(2, {0.0, 0.0, I}, {})},
        {"m2_elliptic_b", make_spec(2, {}, {cplx{1.0, 0.0}, -I})},
        {"m2_dispersive_mixed", make_spec(2, {0.0, 0.0, I}, {cplx{1.0, 0.0}, -I})},
        {"m2_parabolic_a2", make_spec(2, {0.0, I}, {})},
    };
}

ordered_json check_case_json(const CheckReport& rep) {
    ordered_json c;
    c["name"] = rep.name;
    c["passed"] = rep.passed;
    c["max_residual"] = rep.max_residual;
    ordered_json details;
    for (const auto& [label, value] : rep.details) details[label] = value;
    c["details"] = details;
    if (!rep.note.empty()) c["note"] = rep.note;
    return c;
}

ordered_json estimate_case_json(const EstimateReport& rep) {
    ordered_json c;
    c["name"] = rep.name;
    c["passed"] = rep.passed;
    c["sup_norm"] = rep.sup_norm;
    c["growth_fit"] = rep.growth_fit;
    return c;
}

void write_check_grid(const std::string& path, const std::vector<CheckReport>& cases) {
    std::ofstream f(path);
    if (!f) throw InvalidConfig("cannot open output file \"" + path + "\"");
    f << "case,detail,residual\n";
    for (const auto& rep : cases)
        for (const auto& [label, value] : rep.details)
            f << rep.name << "," << label << "," << num17(value) << "\n";
}

void write_estimate_grid(const std::string& path, const std::vector<EstimateReport>& cases) {
    std::ofstream f(path);
    if (!f) throw InvalidConfig("cannot open output file \"" + path + "\"");
    f << "case,xi,norm\n";
    for (const auto& rep : cases)
        for (std::size_t i = 0; i < rep.xi_grid.size(); ++i)
            f << rep.name << "," << num17(rep.xi_grid[i]) << "," << num17(rep.norms[i]) << "\n";
}

int emit_report(const VerifyOptions& opt, std::ostream& out, ordered_json cases, bool passed,
                bool show_ablate) {
    ordered_json rep;
    rep["check"] = opt.which;
    rep["passed"] = passed;
    rep["trials"] = opt.trials;
    rep["seed"] = opt.seed;
    if (show_ablate) rep["ablate"] = opt.ablate;
    rep["cases"] = std::move(cases);
    out << rep.dump(2) << "\n";
    return passed ? 0 : 1;
}

int run_check_suite(const VerifyOptions& opt, std::ostream& out,
                    const std::vector<CheckReport>& cases) {
    bool passed = true;
    ordered_json arr = ordered_json::array();
    for (const auto& rep : cases) {
        passed = passed && rep.passed;
        arr.push_back(check_case_json(rep));
    }
    if (!opt.out_path.empty()) write_check_grid(opt.out_path, cases);
    return emit_report(opt, out, std::move(arr), passed, false);
}

int run_estimate_suite(const VerifyOptions& opt, std::ostream& out,
                       const std::vector<EstimateReport>& cases) {
    bool passed = true;
    ordered_json arr = ordered_json::array();
    for (const auto& rep : cases) {
        passed = passed && rep.passed;
        arr.push_back(estimate_case_json(rep));
    }
    if (!opt.out_path.empty()) write_estimate_grid(opt.out_path, cases);
    return emit_report(opt, out, std::move(arr), passed, true);
}

std::vector<NamedSpec> estimate_spec_set(const VerifyOptions& opt, int m_max) {
    std::vector<NamedSpec> specs;
    if (opt.config) {
        specs.push_back({"config", opt.config->spec});
        return specs;
    }
    specs = named_examples();
    for (int i = 0; i < opt.trials; ++i) {
        const int m = 1 + i % m_max;
        SplitMix64 rng{mix_seed(opt.seed, 2000 + static_cast<std::uint64_t>(i))};
        char name[48];
        std::snprintf(name, sizeof name, "random m=%d #%d", m, i);
        specs.push_back({name, random_spec(m, rng)});
    }
    return specs;
}

std::vector<NamedSpec> elliptic_spec_set(const VerifyOptions& opt) {
    std::vector<NamedSpec> specs;
    if (opt.config) {
        if (classify(opt.config->spec, opt.config->zero_tolerance).kind != EquationKind::Elliptic)
            throw InvalidConfig("prop22 needs an elliptic equation; the config is not one");
        specs.push_back({"config", opt.config->spec});
        return specs;
    }
    specs = {
        {"m2_elliptic_a3", make_spec(2, {0.0, 0.0, I}, {})},
        {"m2_elliptic_b", make_spec(2, {}, {cplx{1.0, 0.0}, -I})},
        {"m3_deep_elliptic", make_spec(3, {I, I}, {cplx{1.0, 0.0}})},
    };
    int found = 0, attempts = 0;
    while (found < opt.trials && attempts < 50 * opt.trials + 50) {
        const int m = 2 + attempts % 3;
        SplitMix64 rng{mix_seed(opt.seed, 3000 + static_cast<std::uint64_t>(attempts))};
        ++attempts;
        EquationSpec spec = random_spec(m, rng);
        if (classify(spec).kind != EquationKind::Elliptic) continue;
        char name[48];
        std::snprintf(name, sizeof name, "random elliptic m=%d #%d", m, found);
        specs.push_back({name, spec});
        ++found;
    }
    return specs;
}

CheckReport sandwich_case(const std::string& name, const EquationSpec& spec, int K, int trials,
                          std::uint64_t seed) {
    CheckReport rep;
    rep.name = name;
    rep.passed = true;
    const double N = select_N(spec, K);
    static const double s_grid[3] = {0.0, 0.5, 1.0};
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double s = s_grid[i % 3];
        const SpectralState f = random_hs_state(K, s, mix_seed(seed, static_cast<std::uint64_t>(i)));
        const EnergyReport er = energy(spec, f, N);
        const double S = er.l2_sq + N * er.low_freq_sq;
        if (!(0.5 * er.E_value <= S && S <= 2.0 * er.E_value)) rep.passed = false;
        worst = std::max(worst, std::max(0.5 * er.E_value - S, S - 2.0 * er.E_value));
    }
    rep.max_residual = std::max(0.0, worst);
    rep.details.emplace_back("max_violation", worst);
    rep.details.emplace_back("N", N);
    return rep;
}

int verify_remark21(const VerifyOptions& opt, std::ostream& out) {
    std::vector<CheckReport> cases;
    if (opt.config) {
        CheckReport single = lambda_split_identity_check(opt.config->spec);
        single.name = "config";
        cases.push_back(single);
        CheckReport suite =
            lambda_split_identity_suite(opt.config->spec.m, opt.trials, mix_seed(opt.seed, 1));
        suite.name = "m=" + std::to_string(opt.config->spec.m) + " random";
        cases.push_back(suite);
    } else {
        for (int m = 1; m <= 6; ++m) {
            CheckReport suite = lambda_split_identity_suite(
                m, opt.trials, mix_seed(opt.seed, static_cast<std::uint64_t>(m)));
            suite.name = "m=" + std::to_string(m);
            cases.push_back(suite);
        }
    }
    return run_check_suite(opt, out, cases);
}

int verify_lemma22(const VerifyOptions& opt, std::ostream& out) {
    std::vector<CheckReport> cases;
    if (opt.config) {
        CheckReport rep = lambda_minus_recursion_check(opt.config->spec, opt.trials, opt.seed);
        rep.name = "config";
        cases.push_back(rep);
    } else {
        for (int m = 1; m <= 6; ++m) {
            CheckReport rep = lambda_minus_recursion_check(
                make_spec(m, {}, {}), opt.trials, mix_seed(opt.seed, static_cast<std::uint64_t>(m)));
            rep.name = "m=" + std::to_string(m);
            cases.push_back(rep);
        }
    }
    return run_check_suite(opt, out, cases);
}

int verify_lemma23(const VerifyOptions& opt, std::ostream& out) {
    std::vector<CheckReport> cases;
    const int m_lo = opt.config ? opt.config->spec.m : 2;
    const int m_hi = opt.config ? opt.config->spec.m : 6;
    if (m_lo < 2) throw InvalidConfig("lemma23 needs m >= 2 (no admissible jstar for m = 1)");
    for (int m = m_lo; m <= m_hi; ++m)
        for (int jstar = 1; jstar <= m - 1; ++jstar) {
            CheckReport rep = lambda_constraint_check(
                m, jstar, opt.trials,
                mix_seed(opt.seed, static_cast<std::uint64_t>(16 * m + jstar)));
            rep.name = "m=" + std::to_string(m) + " jstar=" + std::to_string(jstar);
            cases.push_back(rep);
        }
    return run_check_suite(opt, out, cases);
}

int verify_prop21(const VerifyOptions& opt, std::ostream& out) {
    std::vector<EstimateReport> cases;
    for (const auto& [name, spec] : estimate_spec_set(opt, 4)) {
        const CoefficientTable table = make_table(spec);
        cases.push_back(scan_residual(
            name, [&spec, &table, &opt](double xi) {
                return full_energy_residual(spec, table, xi, opt.ablate);
            }));
    }
    return run_estimate_suite(opt, out, cases);
}

int verify_lemma21(const VerifyOptions& opt, std::ostream& out) {
    std::vector<EstimateReport> cases;
    for (const auto& [name, spec] : estimate_spec_set(opt, 3)) {
        const CoefficientTable table = make_table(spec);
        for (Side side : {Side::Plus, Side::Minus}) {
            const std::string label = name + (side == Side::Plus ? ":plus" : ":minus");
            cases.push_back(scan_residual(
                label, [&spec, &table, side, &opt](double xi) {
                    return projected_energy_residual(spec, table, xi, side, opt.ablate);
                }));
        }
    }
    return run_estimate_suite(opt, out, cases);
}

int verify_prop22(const VerifyOptions& opt, std::ostream& out) {
    std::vector<EstimateReport> cases;
    for (const auto& [name, spec] : elliptic_spec_set(opt)) {
        const CoefficientTable table = make_table(spec);
        cases.push_back(scan_residual(
            name, [&spec, &table, &opt](double xi) {
                return twisted_energy_residual(spec, table, xi, opt.ablate);
            }));
    }
    return run_estimate_suite(opt, out, cases);
}

int verify_lemma31(const VerifyOptions& opt, std::ostream& out) {
    constexpr int K = 256;
    std::vector<CheckReport> cases;
    if (opt.config) {
        cases.push_back(sandwich_case("config", opt.config->spec, K, opt.trials, opt.seed));
    } else {
        cases.push_back(sandwich_case("m2_elliptic_b", make_spec(2, {}, {cplx{1.0, 0.0}, -I}), K,
                                      opt.trials, mix_seed(opt.seed, 0)));
        for (int i = 0; i < 5; ++i) {
            const int m = 1 + i % 3;
            SplitMix64 rng{mix_seed(opt.seed, 1000 + static_cast<std::uint64_t>(i))};
            char name[48];
            std::snprintf(name, sizeof name, "random m=%d #%d", m, i);
            cases.push_back(sandwich_case(name, random_spec(m, rng), K, opt.trials,
                                          mix_seed(opt.seed, 100 + static_cast<std::uint64_t>(i))));
        }
    }
    return run_check_suite(opt, out, cases);
}

} // namespace

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const Classification cls = classify(cfg.spec, cfg.zero_tolerance);
    ordered_json j;
    j["kind"] = kind_name(cls.kind);
    j["jstar"] = cls.jstar ? ordered_json(*cls.jstar) : ordered_json(nullptr);
    j["sign"] = cls.sign;
    j["lambda"] = lambda_sequence(cfg.spec);
    j["smoothing"] = smoothing_name(cls.smoothing);
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
    const CoefficientTable table = make_table(cfg.spec, cfg.zero_tolerance);
    const Classification cls = classify(cfg.spec, cfg.zero_tolerance);
    ordered_json j;
    j["m"] = table.m;
    j["kind"] = kind_name(cls.kind);
    j["jstar"] = table.jstar ? ordered_json(*table.jstar) : ordered_json(nullptr);
    j["gamma"] = pairs_of(table.gamma);
    j["lambda"] = table.lambda;
    j["alpha"] = pairs_of(table.alpha);
    j["lambda_plus"] = table.lambda_plus;
    j["lambda_minus"] = table.lambda_minus;
    if (table.beta) {
        j["beta_plus"] = table.beta->plus;
        j["beta_minus"] = table.beta->minus;
        j["beta_residual"] = beta_substitution_residual(table);
    }
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_path, bool dump_modes) {
    if (!cfg.has_times) throw InvalidConfig("config: simulate needs a \"times\" list");
    const SpectralState phi = initial_state(cfg);
    const double N = select_N(cfg.spec, phi.K);

    struct Row {
        double t, l2, h_half, h_half_plus, h_half_minus, e_value;
    };
    std::vector<Row> rows;
    std::vector<SpectralState> evolved;
    for (double t : cfg.times) {
        SpectralState u;
        try {
            u = evolve_state(cfg.spec, phi, t);
        } catch (const ModeOverflow& e) {
            char msg[192];
            std::snprintf(msg, sizeof msg,
                          "t=%.17g, xi=%g: predicted log-modulus %.2f exceeds the double "
                          "exponent range; nothing was written",
                          t, e.xi, e.log_modulus);
            throw ModeOverflow(e.xi, e.log_modulus, msg);
        }
        const EnergyReport er = energy(cfg.spec, u, N);
        rows.push_back({t, l2_norm(u), sobolev_norm(u, 0.5),
                        sobolev_norm(project(u, Projection::Plus), 0.5),
                        sobolev_norm(project(u, Projection::Minus), 0.5), er.E_value});
        if (dump_modes) evolved.push_back(std::move(u));
    }

    std::ofstream f(out_path);
    if (!f) throw InvalidConfig("cannot open output file \"" + out_path + "\"");
    f << "t,l2,h_half,h_half_plus,h_half_minus,E_value\n";
    for (const Row& r : rows)
        f << num17(r.t) << "," << num17(r.l2) << "," << num17(r.h_half) << ","
          << num17(r.h_half_plus) << "," << num17(r.h_half_minus) << "," << num17(r.e_value)
          << "\n";

    if (dump_modes) {
        std::filesystem::path base(out_path);
        base.replace_extension();
        for (std::size_t i = 0; i < evolved.size(); ++i) {
            const std::string mode_path = base.string() + "_modes_" + std::to_string(i) + ".csv";
            std::ofstream mf(mode_path);
            if (!mf) throw InvalidConfig("cannot open output file \"" + mode_path + "\"");
            mf << "xi,modulus\n";
            const SpectralState& u = evolved[i];
            for (int xi = -u.K; xi <= u.K; ++xi)
                mf << xi << "," << num17(std::abs(u.at(xi))) << "\n";
        }
    }
    return 0;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
    if (opt.trials < 1) throw InvalidConfig("verify: --trials must be >= 1");
    if (opt.which == "remark21") return verify_remark21(opt, out);
    if (opt.which == "lemma22") return verify_lemma22(opt, out);
    if (opt.which == "lemma23") return verify_lemma23(opt, out);
    if (opt.which == "prop21") return verify_prop21(opt, out);
    if (opt.which == "lemma21") return verify_lemma21(opt, out);
    if (opt.which == "prop22") return verify_prop22(opt, out);
    if (opt.which == "lemma31") return verify_lemma31(opt, out);
    throw InvalidConfig("verify: unknown check \"" + opt.which +
                        "\" (expected one of remark21, lemma22, lemma23, prop21, lemma21, "
                        "prop22, lemma31)");
}

int cmd_growth(const RunConfig& cfg, int xi_max, std::ostream& out) {
    if (xi_max < 4) throw InvalidConfig("growth: --xi-max must be >= 4");
    const auto rows = smoothing_rate_scan(cfg.spec, xi_max);
    out << "xi,rate_plus,rate_minus,predicted_diagonal_rate\n";
    for (const ScanRow& r : rows)
        out << num17(r.xi) << "," << num17(r.rate_plus) << "," << num17(r.rate_minus) << ","
            << num17(predicted_rate_diagonal(cfg.spec, r.xi)) << "\n";
    return 0;
}

} // namespace dlab::cli
