#include "dlab/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>

#include <json.hpp>

#include "dlab/errors.hpp"
#include "dlab/mode.hpp"
#include "dlab/parallel.hpp"
#include "dlab/rng.hpp"

namespace dlab {

namespace {

double angle_bracket(double xi) { return std::sqrt(1.0 + xi * xi); }

// conj(u^(xi)) * conj(u^(-xi)): the pair product every off-diagonal pairing
// term contracts against.
cplx pair_product(const SpectralState& f, int xi) {
    return std::conj(f.at(xi)) * std::conj(f.at(-xi));
}

} // namespace

SpectralState zero_state(int K) {
    if (K < 0) throw InvalidConfig("cutoff K must be >= 0");
    SpectralState f;
    f.K = K;
    f.c.assign(static_cast<std::size_t>(2 * K + 1), cplx{0.0, 0.0});
    return f;
}

SpectralState state_from_modes(int K, const std::vector<std::pair<int, cplx>>& modes) {
    SpectralState f = zero_state(K);
    for (const auto& [xi, v] : modes) {
        if (xi < -K || xi > K)
            throw InvalidConfig("mode frequency " + std::to_string(xi) +
                                " outside [-K, K] with K = " + std::to_string(K));
        f.set(xi, v);
    }
    return f;
}

SpectralState random_hs_state(int K, double s, std::uint64_t seed, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidConfig("random state decay margin must be > 0");
    SpectralState f = zero_state(K);
    const double p = s + 0.5 + epsilon;
    for (int xi = -K; xi <= K; ++xi) {
        SplitMix64 g{mix_seed(seed, xi)};
        f.set(xi, std::pow(angle_bracket(static_cast<double>(xi)), -p) * g.unit_complex());
    }
    return f;
}

SpectralState delta_state(int K, int xi) {
    return state_from_modes(K, {{xi, cplx{1.0, 0.0}}});
}

SpectralState project(const SpectralState& f, Projection p) {
    SpectralState out = zero_state(f.K);
    out.time_tag = f.time_tag;
    for (int xi = -f.K; xi <= f.K; ++xi) {
        const bool keep = (p == Projection::Plus && xi >= 1) ||
                          (p == Projection::Minus && xi <= -1) ||
                          (p == Projection::Zero && xi == 0) ||
                          (p == Projection::NonZero && xi != 0);
        if (keep) out.set(xi, f.at(xi));
    }
    return out;
}

SpectralState multiplier(const SpectralState& f, MultiplierKind kind, double s,
                         bool auto_project_nonzero) {
    const bool singular_at_zero =
        (kind == MultiplierKind::Riesz && s < 0.0) || (kind == MultiplierKind::Dpow && s < 0.0);
    if (kind == MultiplierKind::Dpow && std::nearbyint(s) != s)
        throw InvalidConfig("signed-derivative multiplier needs an integer exponent");
    if (singular_at_zero && f.at(0) != cplx{0.0, 0.0} && !auto_project_nonzero)
        throw InvalidConfig("negative-power multiplier is undefined on the xi = 0 mode; "
                            "project it away first");

    SpectralState out = zero_state(f.K);
    out.time_tag = f.time_tag;
    for (int xi = -f.K; xi <= f.K; ++xi) {
        if (xi == 0 && singular_at_zero) continue;
        const auto x = static_cast<double>(xi);
        double w = 1.0;
        switch (kind) {
        case MultiplierKind::Bessel: w = std::pow(angle_bracket(x), s); break;
        case MultiplierKind::Riesz: w = std::pow(std::abs(x), s); break;
        case MultiplierKind::Dpow: w = std::pow(x, s); break;
        }
        out.set(xi, w * f.at(xi));
    }
    return out;
}

double l2_norm(const SpectralState& f) {
    double acc = 0.0;
    for (const auto& v : f.c) acc += std::norm(v);
    return std::sqrt(acc);
}

double sobolev_norm(const SpectralState& f, double s) {
    double acc = 0.0;
    for (int xi = -f.K; xi <= f.K; ++xi)
        acc += std::pow(angle_bracket(static_cast<double>(xi)), 2.0 * s) * std::norm(f.at(xi));
    return std::sqrt(acc);
}

SpectralState evolve_state(const EquationSpec& spec, const SpectralState& f, double t) {
    spec.validate();
    // Overflow scan first so the caller never sees a half-evolved state.
    for (int xi = 0; xi <= f.K; ++xi) {
        const Mat2 A = cplx{0.0, t} * build_mode_matrix(spec, static_cast<double>(xi)).M;
        const double log_mod = predicted_log_modulus(A);
        if (log_mod > 700.0) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "mode xi = %d overflows: log-modulus %.3g exceeds 700", xi, log_mod);
            throw ModeOverflow(static_cast<double>(xi), log_mod, buf);
        }
    }
    SpectralState out = zero_state(f.K);
    out.time_tag = f.time_tag + t;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for(static_cast<std::size_t>(f.K) + 1, [&](std::size_t i) {
        const int xi = static_cast<int>(i);
        try {
            const ModePair p0{static_cast<double>(xi), f.at(xi), std::conj(f.at(-xi))};
            const ModePair p1 = evolve_mode(spec, p0, t);
            out.set(xi, p1.u_plus);
            if (xi > 0) out.set(-xi, std::conj(p1.u_minus_bar));
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return out;
}

double select_N(const EquationSpec& spec, int K) {
    const auto g = gamma_sequence(spec);
    const int grid_max = std::max(K, 1024);
    double c_req = 0.0;
    for (int xi = 1; xi <= grid_max; ++xi) {
        const auto x = static_cast<double>(xi);
        cplx sum{0.0, 0.0};
        for (int j = 1; j <= spec.m - 1; ++j)
            sum += g[static_cast<std::size_t>(j - 1)] * std::pow(x, -2.0 * j);
        const double need = (std::abs(sum) - 0.5) * std::pow(x, 2.0 * spec.m);
        c_req = std::max(c_req, need);
    }
    double c = 0.5;
    while (c < c_req) c *= 2.0;
    return std::max(1.0, 2.0 * c);
}

EnergyReport energy(const EquationSpec& spec, const SpectralState& f, double N) {
    spec.validate();
    EnergyReport rep;
    rep.N_used = N;
    for (const auto& v : f.c) rep.l2_sq += std::norm(v);
    for (int xi = -f.K; xi <= f.K; ++xi) {
        if (xi == 0) continue;
        rep.low_freq_sq += std::pow(std::abs(static_cast<double>(xi)), -2.0 * spec.m) *
                           std::norm(f.at(xi));
    }
    const auto g = gamma_sequence(spec);
    for (int j = 1; j <= spec.m - 1; ++j) {
        cplx inner{0.0, 0.0};
        for (int xi = 1; xi <= f.K; ++xi)
            inner += std::pow(static_cast<double>(xi), -2.0 * j) * pair_product(f, xi);
        rep.correction_value += (g[static_cast<std::size_t>(j - 1)] * 2.0 * inner).real();
    }
    rep.E_value = rep.l2_sq + N * rep.low_freq_sq + rep.correction_value;
    for (double s : {0.0, 0.5, 1.0}) rep.sobolev[s] = sobolev_norm(f, s);
    return rep;
}

CorrectionTerms correction_terms(const SpectralState& u, const CoefficientTable& table, int jstar) {
    if (jstar < 1 || jstar > table.m)
        throw InvalidConfig("correction terms need 1 <= jstar <= m");
    const int len = std::max(0, 2 * (table.m - jstar - 1));
    if (len > 0 && !table.beta)
        throw InvalidConfig("correction terms need the beta weights for this jstar");
    if (len > 0 && (table.beta->plus.size() != static_cast<std::size_t>(len) ||
                    table.beta->minus.size() != static_cast<std::size_t>(len)))
        throw InvalidConfig("beta weights in the table do not match this jstar");

    // S_w = sum_{xi >= 1} xi^{-w} conj(u^(xi)) conj(u^(-xi))
    auto pair_sum = [&u](int w) {
        cplx acc{0.0, 0.0};
        for (int xi = 1; xi <= u.K; ++xi)
            acc += std::pow(static_cast<double>(xi), -static_cast<double>(w)) * pair_product(u, xi);
        return acc;
    };
    auto side_sum = [&u](int w, bool plus_side) {
        double acc = 0.0;
        for (int xi = 1; xi <= u.K; ++xi)
            acc += std::pow(static_cast<double>(xi), -static_cast<double>(w)) *
                   std::norm(u.at(plus_side ? xi : -xi));
        return acc;
    };

    const int n_alpha = 2 * table.m - 1;
    CorrectionTerms out;
    for (int j = 1; j <= n_alpha; ++j) {
        const double term = (table.alpha_at(j) * pair_sum(j)).real();
        out.G_plus += term;
        out.G_minus += (j % 2 == 0) ? term : -term;
    }

    out.F_minus.resize(static_cast<std::size_t>(len));
    out.F_plus.resize(static_cast<std::size_t>(len));
    for (int k = 1; k <= len; ++k) {
        double fm = side_sum(k + 2, false);
        double fp = side_sum(k + 2, true);
        for (int j = 1; j <= n_alpha; ++j) {
            const double term = (table.alpha_at(j) * pair_sum(j + k + 2)).real();
            fm += (j % 2 == 0) ? term : -term;
            fp += term;
        }
        out.F_minus[static_cast<std::size_t>(k - 1)] = fm;
        out.F_plus[static_cast<std::size_t>(k - 1)] = fp;
        out.G_plus += table.beta->plus[static_cast<std::size_t>(k - 1)] * fm;
        out.G_minus += table.beta->minus[static_cast<std::size_t>(k - 1)] * fp;
    }
    return out;
}

std::string state_to_json(const SpectralState& f) {
    nlohmann::ordered_json j;
    j["K"] = f.K;
    auto modes = nlohmann::ordered_json::array();
    for (int xi = -f.K; xi <= f.K; ++xi) {
        const cplx v = f.at(xi);
        if (v == cplx{0.0, 0.0}) continue;
        modes.push_back({xi, v.real(), v.imag()});
    }
    j["modes"] = std::move(modes);
    j["t"] = f.time_tag;
    return j.dump();
}

SpectralState state_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidConfig(std::string("state is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("K") || !j["K"].is_number_integer())
        throw InvalidConfig("state needs an integer \"K\"");
    SpectralState f = zero_state(j["K"].get<int>());
    if (j.contains("t")) {
        if (!j["t"].is_number()) throw InvalidConfig("state \"t\" must be a number");
        f.time_tag = j["t"].get<double>();
    }
    if (j.contains("modes")) {
        if (!j["modes"].is_array()) throw InvalidConfig("state \"modes\" must be an array");
        for (const auto& row : j["modes"]) {
            if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
                !row[1].is_number() || !row[2].is_number())
                throw InvalidConfig("each mode must be [xi, re, im] with integer xi");
            const int xi = row[0].get<int>();
            if (xi < -f.K || xi > f.K)
                throw InvalidConfig("mode frequency " + std::to_string(xi) +
                                    " outside [-K, K] with K = " + std::to_string(f.K));
            f.set(xi, cplx{row[1].get<double>(), row[2].get<double>()});
        }
    }
    return f;
}

} // namespace dlab
