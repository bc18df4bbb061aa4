#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/subprocess.hpp"

using nlohmann::json;
using testsupport::run;
using testsupport::slurp;

namespace {

const std::string cli = DLAB_CLI_PATH;
const std::string config_dir = DLAB_CONFIG_DIR;

std::string bundled(const std::string& name) { return config_dir + "/" + name + ".json"; }

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "/tmp/dlab_cli_" + std::to_string(getpid()) + "_" + name;
    std::ofstream f(path);
    f << text;
    return path;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        if (first) {
            while (std::getline(cells, cell, ',')) csv.header.push_back(cell);
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        csv.rows.push_back(row);
    }
    return csv;
}

} // namespace

TEST_CASE("classify reports the bundled example types exactly") {
    struct Expect {
        const char* config;
        const char* kind;
        const char* smoothing;
        int jstar; // -1 for null
        int sign;
    };
    const Expect expected[] = {
        {"m1_dispersive", "Dispersive", "none", -1, 0},
        {"m2_elliptic_a3", "Elliptic", "P+ [0,inf), P- (-inf,0]", 2, 1},
        {"m2_elliptic_b", "Elliptic", "P+ (-inf,0], P- [0,inf)", 2, -1},
        {"m2_dispersive_mixed", "Dispersive", "none", -1, 0},
        {"m2_parabolic_a2", "Parabolic", "[0,inf)", 1, 1},
    };
    for (const auto& e : expected) {
        const auto r = run(cli, {"classify", "--config", bundled(e.config)});
        REQUIRE_MESSAGE(r.exit_code == 0, e.config << ": " << r.err);
        const json j = json::parse(r.out);
        CHECK(j["kind"] == e.kind);
        CHECK(j["smoothing"] == e.smoothing);
        CHECK(j["sign"] == e.sign);
        if (e.jstar < 0)
            CHECK(j["jstar"].is_null());
        else
            CHECK(j["jstar"] == e.jstar);
    }
    // lambda content for the b-driven elliptic example
    const auto r = run(cli, {"classify", "--config", bundled("m2_elliptic_b")});
    const json j = json::parse(r.out);
    REQUIRE(j["lambda"].size() == 3);
    CHECK(j["lambda"][0].get<double>() == 0.0);
    CHECK(j["lambda"][1].get<double>() == 0.0);
    CHECK(j["lambda"][2].get<double>() == -2.0);
}

TEST_CASE("table dumps the sequences and a small back-substitution residual") {
    const auto r = run(cli, {"table", "--config", bundled("m2_elliptic_b")});
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["gamma"][0][0].get<double>() == 0.0);
    CHECK(j["gamma"][0][1].get<double>() == -1.0);
    CHECK(j["jstar"] == 2);
    CHECK(j["beta_plus"].empty()); // jstar = m: no tail system
    CHECK(j["beta_residual"].get<double>() == 0.0);

    // deep elliptic: m = 4, jstar = 1, four beta weights per side
    const auto deep = write_temp("m4_elliptic.json",
                                 R"({"m": 4, "a": [[0.0, 1.0], [0.2, 0.1]],
                                     "b": [[0.5, -0.3], [0.1, 0.4], [0.0, 0.7]]})");
    const auto rd = run(cli, {"table", "--config", deep});
    REQUIRE_MESSAGE(rd.exit_code == 0, rd.err);
    const json jd = json::parse(rd.out);
    CHECK(jd["kind"] == "Elliptic");
    CHECK(jd["jstar"] == 1);
    REQUIRE(jd["beta_plus"].size() == 4);
    REQUIRE(jd["beta_minus"].size() == 4);
    CHECK(jd["beta_residual"].get<double>() <= 1e-10);
    std::remove(deep.c_str());

    // b == 0 => alpha identically zero
    const auto ra = run(cli, {"table", "--config", bundled("m2_parabolic_a2")});
    const json ja = json::parse(ra.out);
    for (const auto& entry : ja["alpha"]) {
        CHECK(entry[0].get<double>() == 0.0);
        CHECK(entry[1].get<double>() == 0.0);
    }
}

TEST_CASE("simulate writes one row per time and matches initial norms at t = 0") {
    const auto cfg = write_temp("modes.json",
                                R"({"m": 2, "a": [[0.0, 0.0], [0.0, 1.0]],
                                    "domain": {"type": "torus", "cutoff": 8},
                                    "initial": {"modes": [[1, 1.0, 0.0], [-1, 0.0, 1.0]]},
                                    "times": [0.0]})");
    const std::string out = "/tmp/dlab_cli_sim.csv";
    const auto r = run(cli, {"simulate", "--config", cfg, "--out", out});
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.header.size() == 6);
    CHECK(csv.header[0] == "t");
    CHECK(csv.header[5] == "E_value");
    REQUIRE(csv.rows.size() == 1);
    const auto& row = csv.rows[0];
    CHECK(row[0] == 0.0);
    CHECK(row[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));          // l2
    CHECK(row[3] == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));     // h_half_plus
    CHECK(row[4] == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));     // h_half_minus
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("simulate --dump-modes writes a moduli file per requested time") {
    const auto cfg = write_temp("dump.json",
                                R"({"m": 1, "a": [[1.0, 0.0]],
                                    "domain": {"type": "torus", "cutoff": 4},
                                    "initial": {"delta": {"xi": 2}},
                                    "times": [0.0, 0.5]})");
    const std::string out = "/tmp/dlab_cli_dump.csv";
    const auto r = run(cli, {"simulate", "--config", cfg, "--out", out, "--dump-modes"});
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    for (int i = 0; i < 2; ++i) {
        const std::string path = "/tmp/dlab_cli_dump_modes_" + std::to_string(i) + ".csv";
        const Csv moduli = parse_csv(slurp(path));
        REQUIRE(moduli.header.size() == 2);
        CHECK(moduli.header[0] == "xi");
        CHECK(moduli.header[1] == "modulus");
        REQUIRE(moduli.rows.size() == 9); // xi = -4..4
        for (const auto& row : moduli.rows) {
            // unitary dispersive evolution: the delta mode keeps modulus one
            const double expected = row[0] == 2.0 ? 1.0 : 0.0;
            CHECK(row[1] == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
        }
        std::remove(path.c_str());
    }
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("backward elliptic runs lose the initial regularity as the cutoff grows") {
    // plus-side modes grow like e^{|t| xi} backward; doubling K multiplies the
    // t = -0.05 plus-side H^{1/2} mass by far more than 10
    auto config_for = [](int K) {
        return std::string(R"({"m": 2, "a": [[0.0, 0.0], [0.0, 0.0], [0.0, 1.0]],)") +
               R"( "domain": {"type": "torus", "cutoff": )" + std::to_string(K) + "}," +
               R"( "initial": {"random_hs": {"s": 0.0}}, "times": [-0.05], "seed": 5})";
    };
    double h_plus[2] = {0.0, 0.0};
    int idx = 0;
    for (int K : {32, 128}) {
        const auto cfg = write_temp("ell_" + std::to_string(K) + ".json", config_for(K));
        const std::string out = "/tmp/dlab_cli_ell_" + std::to_string(K) + ".csv";
        const auto r = run(cli, {"simulate", "--config", cfg, "--out", out});
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        const Csv csv = parse_csv(slurp(out));
        REQUIRE(csv.rows.size() == 1);
        h_plus[idx++] = csv.rows[0][3];
        std::remove(cfg.c_str());
        std::remove(out.c_str());
    }
    CHECK(h_plus[1] >= 10.0 * h_plus[0]);
}

TEST_CASE("growth matches the diagonal prediction when b vanishes") {
    const auto r = run(cli, {"growth", "--config", bundled("m2_parabolic_a2"), "--xi-max", "16"});
    REQUIRE(r.exit_code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 16);
    for (const auto& row : csv.rows) {
        CHECK(std::abs(row[1] - row[3]) <= 1e-10);       // rate_plus == prediction
        CHECK(row[1] == doctest::Approx(-row[0] * row[0])); // -xi^2 exactly here
    }
}

TEST_CASE("verify reports are well-formed and honor --config focus") {
    const auto r = run(cli, {"verify", "remark21", "--trials", "5", "--seed", "2", "--config",
                             bundled("m2_dispersive_mixed")});
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    const json j = json::parse(r.out);
    CHECK(j["check"] == "remark21");
    CHECK(j["passed"] == true);
    CHECK(j["seed"] == 2);
    REQUIRE(j["cases"].size() == 2);
    CHECK(j["cases"][0]["name"] == "config");
    CHECK(j["cases"][0]["max_residual"].get<double>() <= 1e-10);
}

TEST_CASE("verify --out writes the scan grid") {
    const std::string out = "/tmp/dlab_cli_grid.csv";
    const auto r = run(cli, {"verify", "prop21", "--trials", "2", "--seed", "2", "--out", out});
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(out);
    REQUIRE(text.rfind("case,xi,norm\n", 0) == 0);
    const long data_lines = std::count(text.begin(), text.end(), '\n') - 1;
    // 7 cases (5 examples + 2 random) x 11 grid points
    CHECK(data_lines == 7 * 11);
    std::remove(out.c_str());
}

TEST_CASE("exit codes follow the contract") {
    const auto bad = write_temp("bad.json", R"({"m": 2, "unknown_key": 1})");
    CHECK(run(cli, {"classify", "--config", bad}).exit_code == 2);
    std::remove(bad.c_str());

    const auto missing = run(cli, {"classify", "--config", "/tmp/definitely_not_there.json"});
    CHECK(missing.exit_code == 2);

    CHECK(run(cli, {"verify", "nosuch"}).exit_code == 2);
    CHECK(run(cli, {"growth", "--config", bundled("m1_dispersive"), "--xi-max", "3"}).exit_code ==
          2);

    // backward parabolic run beyond the exponent budget: exit 4, no output file
    const auto ovf = write_temp("ovf.json",
                                R"({"m": 2, "a": [[0.0, 0.0], [0.0, 1.0]],
                                    "domain": {"type": "torus", "cutoff": 32},
                                    "initial": {"random_hs": {"s": 0.0}},
                                    "times": [-1.0, 0.0]})");
    const std::string out = "/tmp/dlab_cli_ovf.csv";
    std::remove(out.c_str());
    const auto r = run(cli, {"simulate", "--config", ovf, "--out", out});
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("xi=27") != std::string::npos);
    CHECK(slurp(out).empty());
    std::remove(ovf.c_str());

    // ablation on a config whose corrections matter: verification failure
    const auto abl = run(cli, {"verify", "prop21", "--trials", "1", "--config",
                               bundled("m2_dispersive_mixed"), "--ablate-correction"});
    CHECK(abl.exit_code == 1);
    const json ja = json::parse(abl.out);
    CHECK(ja["cases"][0]["growth_fit"].get<double>() >= 0.9);
}

TEST_CASE("identical config and seed give bit-identical outputs") {
    const auto a = run(cli, {"classify", "--config", bundled("m2_elliptic_b")});
    const auto b = run(cli, {"classify", "--config", bundled("m2_elliptic_b")});
    CHECK(a.out == b.out);

    const std::string o1 = "/tmp/dlab_cli_det1.csv", o2 = "/tmp/dlab_cli_det2.csv";
    run(cli, {"simulate", "--config", bundled("m2_dispersive_mixed"), "--out", o1});
    run(cli, {"simulate", "--config", bundled("m2_dispersive_mixed"), "--out", o2});
    CHECK(slurp(o1) == slurp(o2));
    CHECK(!slurp(o1).empty());
    std::remove(o1.c_str());
    std::remove(o2.c_str());

    const auto v1 = run(cli, {"verify", "lemma31", "--trials", "5", "--seed", "77"});
    const auto v2 = run(cli, {"verify", "lemma31", "--trials", "5", "--seed", "77"});
    CHECK(v1.out == v2.out);
    CHECK(v1.exit_code == 0);
}
