#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dlab/errors.hpp"

namespace dlab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw InvalidConfig("config: " + msg); }

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where + " must be a number");
    return j.get<double>();
}

std::vector<cplx> coefficient_list(const json& j, const std::string& key, int m) {
    if (!j.is_array()) fail("\"" + key + "\" must be an array of [re, im] pairs");
    if (j.size() > static_cast<std::size_t>(2 * m))
        fail("\"" + key + "\" has more than 2m entries");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
            fail("every entry of \"" + key + "\" must be an [re, im] pair");
        out.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) fail("unknown key \"" + key + "\" in " + where);
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("\"" + path + "\" is not valid JSON: " + e.what());
    }
    if (!j.is_object()) fail("top level must be an object");
    check_keys(j, {"m", "a", "b", "domain", "initial", "times", "zero_tolerance", "seed"},
               "the top-level object");

    if (!j.contains("m") || !j["m"].is_number_integer()) fail("integer \"m\" is required");
    const int m = j["m"].get<int>();
    if (m < 1) fail("\"m\" must be >= 1");

    RunConfig cfg;
    std::vector<cplx> a, b;
    if (j.contains("a")) a = coefficient_list(j["a"], "a", m);
    if (j.contains("b")) b = coefficient_list(j["b"], "b", m);
    cfg.spec = make_spec(m, std::move(a), std::move(b));

    if (j.contains("zero_tolerance")) {
        cfg.zero_tolerance = as_number(j["zero_tolerance"], "\"zero_tolerance\"");
        if (!(cfg.zero_tolerance > 0.0)) fail("\"zero_tolerance\" must be > 0");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) fail("\"seed\" must be an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }

    if (j.contains("domain")) {
        const auto& d = j["domain"];
        if (!d.is_object()) fail("\"domain\" must be an object");
        check_keys(d, {"type", "cutoff"}, "\"domain\"");
        if (!d.contains("type") || !d["type"].is_string() || d["type"] != "torus")
            fail("\"domain.type\" must be \"torus\"");
        if (!d.contains("cutoff") || !d["cutoff"].is_number_integer())
            fail("integer \"domain.cutoff\" is required");
        cfg.cutoff = d["cutoff"].get<int>();
        if (cfg.cutoff < 0) fail("\"domain.cutoff\" must be >= 0");
        cfg.has_domain = true;
    }

    if (j.contains("initial")) {
        const auto& ini = j["initial"];
        if (!ini.is_object() || ini.size() != 1)
            fail("\"initial\" must hold exactly one of \"modes\", \"random_hs\", \"delta\"");
        if (ini.contains("modes")) {
            cfg.initial_kind = RunConfig::InitialKind::Modes;
            if (!ini["modes"].is_array()) fail("\"initial.modes\" must be an array");
            for (const auto& row : ini["modes"]) {
                if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
                    !row[1].is_number() || !row[2].is_number())
                    fail("every mode must be [xi, re, im] with integer xi");
                cfg.modes.emplace_back(row[0].get<int>(),
                                       cplx{row[1].get<double>(), row[2].get<double>()});
            }
        } else if (ini.contains("random_hs")) {
            cfg.initial_kind = RunConfig::InitialKind::RandomHs;
            const auto& r = ini["random_hs"];
            if (!r.is_object()) fail("\"initial.random_hs\" must be an object");
            check_keys(r, {"s", "seed", "epsilon"}, "\"initial.random_hs\"");
            if (!r.contains("s")) fail("\"initial.random_hs.s\" is required");
            cfg.hs_s = as_number(r["s"], "\"initial.random_hs.s\"");
            if (r.contains("seed")) {
                if (!r["seed"].is_number_integer())
                    fail("\"initial.random_hs.seed\" must be an integer");
                cfg.hs_seed = r["seed"].get<std::uint64_t>();
                cfg.hs_seed_set = true;
            }
            if (r.contains("epsilon")) {
                cfg.hs_epsilon = as_number(r["epsilon"], "\"initial.random_hs.epsilon\"");
                if (!(cfg.hs_epsilon > 0.0)) fail("\"initial.random_hs.epsilon\" must be > 0");
            }
        } else if (ini.contains("delta")) {
            cfg.initial_kind = RunConfig::InitialKind::Delta;
            const auto& d = ini["delta"];
            if (!d.is_object() || !d.contains("xi") || !d["xi"].is_number_integer())
                fail("\"initial.delta\" needs an integer \"xi\"");
            check_keys(d, {"xi"}, "\"initial.delta\"");
            cfg.delta_xi = d["xi"].get<int>();
        } else {
            fail("\"initial\" must hold one of \"modes\", \"random_hs\", \"delta\"");
        }
    }

    if (j.contains("times")) {
        if (!j["times"].is_array()) fail("\"times\" must be an array of numbers");
        for (const auto& t : j["times"]) cfg.times.push_back(as_number(t, "\"times\" entry"));
        if (!std::is_sorted(cfg.times.begin(), cfg.times.end()))
            fail("\"times\" must be sorted ascending");
        cfg.has_times = true;
    }
    return cfg;
}

SpectralState initial_state(const RunConfig& cfg) {
    if (!cfg.has_domain) fail("a \"domain\" section is required for this command");
    switch (cfg.initial_kind) {
    case RunConfig::InitialKind::Modes:
        return state_from_modes(cfg.cutoff, cfg.modes);
    case RunConfig::InitialKind::RandomHs:
        return random_hs_state(cfg.cutoff, cfg.hs_s,
                               cfg.hs_seed_set ? cfg.hs_seed : cfg.seed, cfg.hs_epsilon);
    case RunConfig::InitialKind::Delta:
        return delta_state(cfg.cutoff, cfg.delta_xi);
    case RunConfig::InitialKind::None:
        break;
    }
    fail("an \"initial\" section is required for this command");
}

} // namespace dlab::cli
