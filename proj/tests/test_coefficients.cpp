#include <doctest.h>

#include <cmath>

#include "dlab/coefficients.hpp"
#include "dlab/errors.hpp"
#include "dlab/rng.hpp"
#include "support/specs.hpp"

using namespace dlab;

namespace {

double im(cplx z) { return z.imag(); }

} // namespace

TEST_CASE("order-2 sequences match their hand-unrolled closed forms") {
    SplitMix64 rng{0x5eedu};
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_spec(2, rng);
        const cplx a2 = s.a_at(2), a3 = s.a_at(3);
        const cplx b1 = s.b_at(1), b2 = s.b_at(2), b3 = s.b_at(3);

        const auto g = gamma_sequence(s);
        REQUIRE(g.size() == 1);
        CHECK(std::abs(g[0] - b2) == 0.0);

        const auto lam = lambda_sequence(s);
        REQUIRE(lam.size() == 3);
        CHECK(lam[0] == doctest::Approx(2.0 * im(s.a_at(1))).epsilon(1e-14));
        CHECK(lam[1] == doctest::Approx(2.0 * im(a2)).epsilon(1e-14));
        CHECK(lam[2] ==
              doctest::Approx(2.0 * im(a3) + 2.0 * im(std::conj(b1) * b2)).epsilon(1e-13));

        const auto al = alpha_sequence(s);
        REQUIRE(al.size() == 3);
        CHECK(std::abs(al[0] - b1) == 0.0);
        CHECK(std::abs(al[1] - b2) == 0.0);
        CHECK(std::abs(al[2] - (b3 - std::conj(a2) * b1)) < 1e-14);
    }
}

TEST_CASE("order-3 sequences match their hand-unrolled closed forms") {
    SplitMix64 rng{0xfeedu};
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_spec(3, rng);
        const cplx a2 = s.a_at(2), a4 = s.a_at(4);
        const cplx b1 = s.b_at(1), b2 = s.b_at(2), b3 = s.b_at(3), b4 = s.b_at(4),
                   b5 = s.b_at(5);

        const auto g = gamma_sequence(s);
        REQUIRE(g.size() == 2);
        const cplx g1 = b2;
        const cplx g2 = b4 - std::conj(a2) * b2;
        CHECK(std::abs(g[0] - g1) < 1e-14);
        CHECK(std::abs(g[1] - g2) < 1e-14);

        const auto lam = lambda_sequence(s);
        REQUIRE(lam.size() == 5);
        CHECK(lam[0] == doctest::Approx(2.0 * im(s.a_at(1))).epsilon(1e-14));
        CHECK(lam[1] == doctest::Approx(2.0 * im(a2)).epsilon(1e-14));
        CHECK(lam[2] ==
              doctest::Approx(2.0 * im(s.a_at(3)) + 2.0 * im(std::conj(b1) * g1)).epsilon(1e-13));
        CHECK(lam[3] ==
              doctest::Approx(2.0 * im(a4) - 2.0 * im(std::conj(b2) * g1)).epsilon(1e-13));
        CHECK(lam[4] == doctest::Approx(2.0 * im(s.a_at(5)) + 2.0 * im(std::conj(b3) * g1) +
                                        2.0 * im(std::conj(b1) * g2))
                            .epsilon(1e-13));

        const auto al = alpha_sequence(s);
        REQUIRE(al.size() == 5);
        CHECK(std::abs(al[3] - (b4 - std::conj(a2) * b2)) < 1e-14);
        const cplx a5_expect = b5 - std::conj(a4) * b1 - std::conj(a2) * b3 +
                               std::conj(a2) * std::conj(a2) * b1;
        CHECK(std::abs(al[4] - a5_expect) < 1e-13);

        const auto pm = lambda_pm_sequences(s);
        CHECK(pm.minus[0] == 0.0);
        CHECK(pm.minus[1] == 0.0);
        CHECK(std::abs(pm.minus[2]) < 1e-14);
        const double lm4 = -std::norm(b1) * im(a2);
        CHECK(pm.minus[3] == doctest::Approx(lm4).epsilon(1e-12));
    }
}

TEST_CASE("empty-sum conventions at order 1") {
    const auto s = make_spec(1, {cplx{0.5, -0.25}, cplx{0.0, 3.0}}, {cplx{1.0, 1.0}});
    CHECK(gamma_sequence(s).empty());
    const auto lam = lambda_sequence(s);
    REQUIRE(lam.size() == 1);
    CHECK(lam[0] == doctest::Approx(-0.5));
    const auto al = alpha_sequence(s);
    REQUIRE(al.size() == 1);
    CHECK(al[0] == cplx{1.0, 1.0});
    const auto pm = lambda_pm_sequences(s);
    CHECK(pm.plus[0] == doctest::Approx(-0.5));
    CHECK(pm.minus[0] == 0.0);
}

TEST_CASE("worked examples classify onto the expected branches") {
    const auto d = classify(examples::m1_dispersive());
    CHECK(d.kind == EquationKind::Dispersive);
    CHECK(!d.jstar);
    CHECK(d.sign == 0);
    CHECK(d.smoothing == SmoothingPattern::None);

    const auto e1 = classify(examples::m2_elliptic_a3());
    CHECK(e1.kind == EquationKind::Elliptic);
    CHECK(e1.jstar == 2);
    CHECK(e1.sign == 1);
    CHECK(e1.smoothing == SmoothingPattern::PlusForwardMinusBackward);

    const auto e2 = classify(examples::m2_elliptic_b());
    CHECK(e2.kind == EquationKind::Elliptic);
    CHECK(e2.jstar == 2);
    CHECK(e2.sign == -1);
    CHECK(e2.smoothing == SmoothingPattern::PlusBackwardMinusForward);

    const auto dm = classify(examples::m2_dispersive_mixed());
    CHECK(dm.kind == EquationKind::Dispersive);

    const auto p = classify(examples::m2_parabolic_a2());
    CHECK(p.kind == EquationKind::Parabolic);
    CHECK(p.jstar == 1);
    CHECK(p.sign == 1);
    CHECK(p.smoothing == SmoothingPattern::ForwardHalfLine);
}

TEST_CASE("order 1 cannot be parabolic") {
    const auto c = classify(make_spec(1, {cplx{0.0, 1.0}}));
    CHECK(c.kind == EquationKind::Elliptic);
    CHECK(c.jstar == 1);
}

TEST_CASE("the zero tolerance is relative to the coefficient scale") {
    // lambda_3 = 2e-15 on a unit-scale spec: below the default threshold
    const auto tiny = classify(make_spec(2, {{}, {}, cplx{0.0, 1e-15}}));
    CHECK(tiny.kind == EquationKind::Dispersive);

    const auto small = classify(make_spec(2, {{}, {}, cplx{0.0, 1e-9}}));
    CHECK(small.kind == EquationKind::Elliptic);

    // same lambda_3 = 2e-8, but the scale is 1e6 so the threshold is 1e-6
    const auto rescaled =
        classify(make_spec(2, {cplx{1e6, 0.0}, {}, cplx{0.0, 1e-8}}));
    CHECK(rescaled.kind == EquationKind::Dispersive);
    CHECK(rescaled.zero_tolerance == doctest::Approx(1e-6));
}

TEST_CASE("beta weights solve their defining triangular relations") {
    SplitMix64 rng{0xbe7au};
    int covered = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_spec(4, rng);
        s.a[0] = cplx{s.a[0].real(), 1.0}; // lambda_1 = 2: elliptic with jstar = 1
        const auto table = make_table(s);
        REQUIRE(table.jstar == 1);
        REQUIRE(table.beta);
        const int len = 2 * (table.m - 1 - 1);
        REQUIRE(table.beta->plus.size() == static_cast<std::size_t>(len));
        const int jstar = 1;
        for (int k = 1; k <= len; ++k) {
            double rhs_p = 0.0, rhs_m = 0.0;
            for (int j = 1; j <= k; ++j) {
                const double lp = table.lambda_plus_at(2 * jstar + k - j - 1);
                const double sp = ((k - j) % 2 == 0) ? 1.0 : -1.0;
                const double sm = (k % 2 == 0) ? 1.0 : -1.0;
                rhs_p += sp * lp * table.beta->plus[static_cast<std::size_t>(j - 1)];
                rhs_m += sm * lp * table.beta->minus[static_cast<std::size_t>(j - 1)];
            }
            const double target = table.lambda_minus_at(2 * jstar + k + 1);
            CHECK(rhs_p == doctest::Approx(target).epsilon(1e-10));
            CHECK(rhs_m == doctest::Approx(target).epsilon(1e-10));
        }
        ++covered;
    }
    CHECK(covered == 100);
}

TEST_CASE("beta systems are empty for the last two elliptic indices") {
    const auto table = make_table(examples::m2_elliptic_a3());
    REQUIRE(table.jstar == 2);
    REQUIRE(table.beta);
    CHECK(table.beta->plus.empty());
    CHECK(table.beta->minus.empty());

    // jstar = m - 1 = 1 on an order-2 spec is also empty
    const auto p = beta_sequences(make_table(examples::m2_parabolic_a2()), 1, 1e-12);
    CHECK(p.plus.empty());
}

TEST_CASE("beta rejects out-of-range jstar and a vanishing pivot") {
    const auto table = make_table(make_spec(3, {cplx{1.0, 0.0}}));
    CHECK_THROWS_AS((void)beta_sequences(table, 0, 1e-12), InvalidConfig);
    CHECK_THROWS_AS((void)beta_sequences(table, 4, 1e-12), InvalidConfig);
    // all-real coefficients: lambda_plus_1 = 0, but the systems are nonempty
    CHECK_THROWS_AS((void)beta_sequences(table, 1, 1e-12), DegenerateBeta);
}

TEST_CASE("tables carry beta only for elliptic specs") {
    CHECK(!make_table(examples::m1_dispersive()).beta);
    CHECK(!make_table(examples::m2_parabolic_a2()).beta);
    CHECK(!make_table(examples::m2_dispersive_mixed()).beta);
    CHECK(make_table(examples::m2_elliptic_b()).beta.has_value());
}
