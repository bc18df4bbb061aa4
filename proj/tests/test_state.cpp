#include <doctest.h>

#include <cmath>

#include "dlab/errors.hpp"
#include "dlab/mode.hpp"
#include "dlab/state.hpp"
#include "support/specs.hpp"

using namespace dlab;

TEST_CASE("explicit construction rejects out-of-range modes") {
    const auto f = state_from_modes(4, {{-4, cplx{1.0, 0.0}}, {3, cplx{0.0, 2.0}}});
    CHECK(f.at(-4) == cplx{1.0, 0.0});
    CHECK(f.at(3) == cplx{0.0, 2.0});
    CHECK(f.at(0) == cplx{0.0, 0.0});
    CHECK_THROWS_AS((void)state_from_modes(4, {{5, cplx{1.0, 0.0}}}), InvalidConfig);
    CHECK_THROWS_AS((void)zero_state(-1), InvalidConfig);
}

TEST_CASE("random states agree on shared modes across cutoffs") {
    const auto small = random_hs_state(64, 0.5, 123u);
    const auto big = random_hs_state(256, 0.5, 123u);
    for (int xi = -64; xi <= 64; ++xi) CHECK(small.at(xi) == big.at(xi));

    // magnitude profile is exactly <xi>^{-s-1/2-eps}
    const double p = 0.5 + 0.5 + 0.05;
    for (int xi : {-7, 0, 1, 33}) {
        const double expect = std::pow(1.0 + static_cast<double>(xi) * xi, -p / 2.0);
        CHECK(std::abs(small.at(xi)) == doctest::Approx(expect).epsilon(1e-12));
    }

    // different seeds decorrelate
    const auto other = random_hs_state(64, 0.5, 124u);
    CHECK(other.at(5) != small.at(5));
}

TEST_CASE("projections split the line as advertised") {
    const auto f = random_hs_state(8, 0.0, 7u);
    const auto plus = project(f, Projection::Plus);
    const auto minus = project(f, Projection::Minus);
    const auto zero = project(f, Projection::Zero);
    const auto nz = project(f, Projection::NonZero);
    for (int xi = -8; xi <= 8; ++xi) {
        CHECK(plus.at(xi) == (xi >= 1 ? f.at(xi) : cplx{}));
        CHECK(minus.at(xi) == (xi <= -1 ? f.at(xi) : cplx{}));
        CHECK(zero.at(xi) == (xi == 0 ? f.at(xi) : cplx{}));
        CHECK(nz.at(xi) == (xi != 0 ? f.at(xi) : cplx{}));
    }
    const double total = l2_norm(f);
    const double parts = std::sqrt(std::pow(l2_norm(plus), 2) + std::pow(l2_norm(minus), 2) +
                                   std::pow(l2_norm(zero), 2));
    CHECK(parts == doctest::Approx(total).epsilon(1e-13));
}

TEST_CASE("multipliers act mode-by-mode with the right weights") {
    const auto f = state_from_modes(5, {{3, cplx{1.0, 1.0}}, {-2, cplx{0.5, 0.0}},
                                        {0, cplx{0.0, 2.0}}});

    const auto bessel = multiplier(f, MultiplierKind::Bessel, -1.0);
    CHECK(std::abs(bessel.at(3) - f.at(3) / std::sqrt(10.0)) < 1e-15);
    CHECK(std::abs(bessel.at(0) - f.at(0)) == 0.0);

    const auto dsq = multiplier(f, MultiplierKind::Dpow, 2.0);
    CHECK(dsq.at(-2) == cplx{2.0, 0.0});
    CHECK(dsq.at(0) == cplx{0.0, 0.0});

    // signed power keeps the sign
    const auto d1 = multiplier(f, MultiplierKind::Dpow, 1.0);
    CHECK(d1.at(-2) == cplx{-1.0, 0.0});

    CHECK_THROWS_AS((void)multiplier(f, MultiplierKind::Dpow, 0.5), InvalidConfig);
    CHECK_THROWS_AS((void)multiplier(f, MultiplierKind::Riesz, -1.0), InvalidConfig);
    const auto riesz = multiplier(f, MultiplierKind::Riesz, -1.0, true);
    CHECK(riesz.at(0) == cplx{0.0, 0.0});
    CHECK(std::abs(riesz.at(3) - f.at(3) / 3.0) < 1e-15);

    // norms on a single mode are the bare weights
    const auto delta = delta_state(6, 4);
    CHECK(l2_norm(delta) == 1.0);
    CHECK(sobolev_norm(delta, 0.5) == doctest::Approx(std::pow(17.0, 0.25)));
}

TEST_CASE("state evolution matches the per-pair closed form") {
    const auto s = examples::m2_elliptic_b();
    const auto f = random_hs_state(16, 1.0, 99u);
    const double t = 0.02;
    const auto g = evolve_state(s, f, t);
    CHECK(g.time_tag == doctest::Approx(t));
    for (int xi = 0; xi <= 16; ++xi) {
        const ModePair p0{static_cast<double>(xi), f.at(xi), std::conj(f.at(-xi))};
        const auto p1 = evolve_mode(s, p0, t);
        CHECK(std::abs(g.at(xi) - p1.u_plus) < 1e-12);
        if (xi > 0) CHECK(std::abs(g.at(-xi) - std::conj(p1.u_minus_bar)) < 1e-12);
    }
}

TEST_CASE("evolution composes and conserves mass when it should") {
    // real a, b = 0, Im a_{2m} = 0: unitary mode evolution
    const auto s = make_spec(2, {cplx{0.7, 0.0}, cplx{-0.3, 0.0}, cplx{1.1, 0.0},
                                 cplx{0.2, 0.0}});
    const auto f = random_hs_state(32, 0.5, 5u);
    const auto g1 = evolve_state(s, evolve_state(s, f, 0.3), 0.7);
    const auto g2 = evolve_state(s, f, 1.0);
    for (int xi = -32; xi <= 32; ++xi) CHECK(std::abs(g1.at(xi) - g2.at(xi)) < 1e-10);
    CHECK(l2_norm(g2) == doctest::Approx(l2_norm(f)).epsilon(1e-12));

    // backwards return
    const auto back = evolve_state(s, g2, -1.0);
    for (int xi = -32; xi <= 32; ++xi) CHECK(std::abs(back.at(xi) - f.at(xi)) < 1e-10);
}

TEST_CASE("evolution reports the overflowing frequency") {
    const auto s = examples::m2_parabolic_a2(); // rates -xi^2 forward, +xi^2 backward
    const auto f = random_hs_state(64, 0.5, 13u);
    try {
        (void)evolve_state(s, f, -1.0); // backward blow-up: worst mode is the cutoff
        FAIL("expected an overflow");
    } catch (const ModeOverflow& e) {
        CHECK(e.xi >= 27.0); // 27^2 > 700
        CHECK(e.log_modulus > 700.0);
    }
}

TEST_CASE("the low-frequency weight has its doubling closed forms") {
    // gamma_1 = -i: the pairing stays within the half-plus-decay budget, N = 1
    CHECK(select_N(examples::m2_elliptic_b(), 64) == 1.0);
    // no gamma at order 1
    CHECK(select_N(examples::m1_dispersive(), 64) == 1.0);
    // gamma_1 = 10: the requirement (10/xi^2 - 1/2) xi^4 peaks at xi = 3 with
    // 49.5, so doubling from 1/2 lands on C = 64 and N = 128
    const auto big = make_spec(2, {}, {{}, cplx{10.0, 0.0}});
    CHECK(select_N(big, 64) == 128.0);
}

TEST_CASE("the energy functional is equivalent to its uncorrected core") {
    const auto s = examples::m2_elliptic_b();
    const double N = select_N(s, 64);
    for (unsigned seed = 1; seed <= 20; ++seed) {
        const auto f = random_hs_state(64, 0.5, seed);
        const auto rep = energy(s, f, N);
        const double core = rep.l2_sq + rep.N_used * rep.low_freq_sq;
        CHECK(0.5 * rep.E_value <= core + 1e-12);
        CHECK(core <= 2.0 * rep.E_value + 1e-12);
        CHECK(rep.sobolev.at(0.0) == doctest::Approx(l2_norm(f)));
    }
}

TEST_CASE("energy on an explicit two-mode state") {
    const auto s = examples::m2_elliptic_b(); // gamma_1 = -i
    auto f = zero_state(8);
    f.set(1, cplx{1.0, 0.0});
    f.set(-1, cplx{0.0, 1.0});
    const auto rep = energy(s, f, 1.0);
    CHECK(rep.l2_sq == doctest::Approx(2.0));
    CHECK(rep.low_freq_sq == doctest::Approx(2.0));
    // pair product at xi=1: conj(1) * conj(i) = -i; correction = Re(-i * 2 * -i) = -2
    CHECK(rep.correction_value == doctest::Approx(-2.0));
    CHECK(rep.E_value == doctest::Approx(2.0));
}

TEST_CASE("split-energy corrections need matching beta data") {
    const auto table = make_table(examples::m2_elliptic_b()); // jstar = 2, empty beta
    const auto f = random_hs_state(16, 0.5, 3u);
    const auto terms = correction_terms(f, table, 2);
    CHECK(terms.F_minus.empty());
    CHECK(terms.F_plus.empty());

    // jstar = 1 on an order-2 table also has empty systems
    const auto t1 = correction_terms(f, table, 1);
    CHECK(t1.F_minus.empty());

    // an order-3 dispersive table has no beta, so jstar = 1 (nonempty range) is rejected
    const auto d3 = make_table(make_spec(3, {cplx{1.0, 0.0}}));
    CHECK_THROWS_AS((void)correction_terms(f, d3, 1), InvalidConfig);
    CHECK_THROWS_AS((void)correction_terms(f, d3, 0), InvalidConfig);
}

TEST_CASE("correction terms match a direct mode-sum evaluation") {
    auto s = make_spec(3, {cplx{0.1, 1.0}, cplx{-0.4, 0.2}, cplx{0.3, -0.1}},
                       {cplx{0.8, 0.3}, cplx{-0.2, 0.6}, cplx{0.15, -0.45}});
    const auto table = make_table(s);
    REQUIRE(table.jstar == 1);
    REQUIRE(table.beta);
    const auto f = random_hs_state(24, 0.5, 17u);
    const auto terms = correction_terms(f, table, 1);
    REQUIRE(terms.F_minus.size() == 2);

    // independent evaluation straight from the definitions
    auto S = [&f](double w) {
        cplx acc{};
        for (int xi = 1; xi <= f.K; ++xi)
            acc += std::pow(xi, -w) * std::conj(f.at(xi)) * std::conj(f.at(-xi));
        return acc;
    };
    auto P = [&f](double w, int sgn) {
        double acc = 0.0;
        for (int xi = 1; xi <= f.K; ++xi) acc += std::pow(xi, -w) * std::norm(f.at(sgn * xi));
        return acc;
    };
    for (int k = 1; k <= 2; ++k) {
        double fm = P(k + 2, -1), fp = P(k + 2, +1);
        for (int j = 1; j <= 5; ++j) {
            const double sj = (j % 2 == 0) ? 1.0 : -1.0;
            fm += (table.alpha_at(j) * sj * S(j + k + 2)).real();
            fp += (table.alpha_at(j) * S(j + k + 2)).real();
        }
        CHECK(terms.F_minus[k - 1] == doctest::Approx(fm).epsilon(1e-12));
        CHECK(terms.F_plus[k - 1] == doctest::Approx(fp).epsilon(1e-12));
    }
    double gp = 0.0, gm = 0.0;
    for (int j = 1; j <= 5; ++j) {
        const double sj = (j % 2 == 0) ? 1.0 : -1.0;
        gp += (table.alpha_at(j) * S(j)).real();
        gm += (table.alpha_at(j) * sj * S(j)).real();
    }
    for (int k = 1; k <= 2; ++k) {
        gp += table.beta->plus[k - 1] * terms.F_minus[k - 1];
        gm += table.beta->minus[k - 1] * terms.F_plus[k - 1];
    }
    CHECK(terms.G_plus == doctest::Approx(gp).epsilon(1e-12));
    CHECK(terms.G_minus == doctest::Approx(gm).epsilon(1e-12));
}

TEST_CASE("state serialization round-trips and validates") {
    auto f = zero_state(5);
    f.set(-3, cplx{0.25, -1.5});
    f.set(0, cplx{2.0, 0.0});
    f.set(5, cplx{-0.125, 0.75});
    f.time_tag = 0.375;

    const auto text = state_to_json(f);
    const auto g = state_from_json(text);
    CHECK(g.K == 5);
    CHECK(g.time_tag == 0.375);
    for (int xi = -5; xi <= 5; ++xi) CHECK(g.at(xi) == f.at(xi));

    // zeros are omitted from the wire format
    CHECK(text.find("[-3,0.25,-1.5]") != std::string::npos);
    CHECK(text.find("[1,") == std::string::npos);

    CHECK_THROWS_AS((void)state_from_json("{"), InvalidConfig);
    CHECK_THROWS_AS((void)state_from_json("{\"modes\":[]}"), InvalidConfig);
    CHECK_THROWS_AS((void)state_from_json("{\"K\":2,\"modes\":[[3,1.0,0.0]]}"), InvalidConfig);
    CHECK_THROWS_AS((void)state_from_json("{\"K\":2,\"modes\":[[1,1.0]]}"), InvalidConfig);
}
