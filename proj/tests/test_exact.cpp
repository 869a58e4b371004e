#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypermu/exact.hpp"

using namespace hypermu;
using namespace hypermu::exact;

TEST_CASE("gaussian rational arithmetic") {
    const GRat a(BigRat(1, 2), BigRat(3, 4));
    const GRat b(BigRat(-2, 3), BigRat(1, 5));
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    CHECK((a / b) * b == a);
    CHECK(a.conj().im == -a.im);
    CHECK(a.norm() == BigRat(1, 4) + BigRat(9, 16));
}

TEST_CASE("rational spectral data sits on the circle") {
    const auto sp = rational_spectral(BigRat(0));
    REQUIRE(sp.has_value());
    CHECK(sp->z_lambda == GRat(BigRat(-1), BigRat(1)));
    CHECK(sp->lambda == BigRat(2));
    CHECK(sp->z_lambda.norm() == BigRat(2));
    // z^2 + lambda z + 2 = 0 exactly.
    const GRat z = sp->z_lambda;
    const GRat resid = z * z + GRat(sp->lambda) * z + GRat(BigRat(2));
    CHECK(resid.is_zero());

    // Dense sweep of slopes.
    for (int num = -20; num <= 8; ++num) {
        const auto s = rational_spectral(BigRat(num, 10));
        if (!s) continue;
        CHECK(s->z_lambda.norm() == BigRat(2));
        const GRat w = s->z_lambda;
        CHECK((w * w + GRat(s->lambda) * w + GRat(BigRat(2))).is_zero());
        CHECK(s->z_lambda.im > 0);
    }
    // Slope 1 gives the tangent point with b = -1: rejected.
    CHECK_FALSE(rational_spectral(BigRat(1)).has_value());
}

TEST_CASE("determinant factorization is a polynomial identity") {
    CHECK(det_m_identity_poly().is_zero());
    CHECK(check_det_m_value(BigRat(1), BigRat(2), BigRat(1)));
    // Spot value: det = 32 - 25 = 7 on both sides at s = (1, 2), lambda = 1.
    const BigRat m11 = (BigRat(1) - BigRat(1) + 2) * 4;
    const BigRat m22 = (BigRat(4) - BigRat(2) + 2) * 1;
    const BigRat m12 = -BigRat(2) * (BigRat(2) - BigRat(3, 2) + 2);
    CHECK(m11 * m22 - m12 * m12 == BigRat(7));
    CHECK(BigRat(1) * 4 * 1 * (2 - BigRat(1, 4)) == BigRat(7));
}

TEST_CASE("exact identities hold on random rational samples") {
    const CounterRng rng(99, 7);
    for (std::uint64_t i = 0; i < 60; ++i) {
        const ExactSample s = draw_exact_sample(rng, i);
        CHECK(check_chi_phi_closed(s));
        CHECK(check_cd_reduction(s));
        CHECK(check_mu2_star_equality(s));
        CHECK(check_mu3_direct_factored(s, 2));
        CHECK(check_mu3_direct_factored(s, 3));
        CHECK(check_f_forms(s));
        CHECK(check_nu_omega(s));
        CHECK(check_omega_relations(s));
        CHECK(check_compat(s));
    }
    for (std::uint64_t i = 0; i < 200; ++i) {
        const BigRat s1 = random_rational(rng, i, 50, 8, 9);
        const BigRat s2 = random_rational(rng, i, 51, 8, 9);
        const BigRat lam = random_rational(rng, i, 52, 2, 9);
        CHECK(check_det_m_value(s1, s2, lam));
    }
}

TEST_CASE("exact samples are interior with band-interior spectral data") {
    const CounterRng rng(5, 3);
    for (std::uint64_t i = 0; i < 100; ++i) {
        const ExactSample s = draw_exact_sample(rng, i);
        for (const auto& z : s.z) CHECK(z.im > 0);
        CHECK(s.sp.z_lambda.im > 0);
        CHECK(abs(s.sp.lambda) < BigRat(2829, 1000));
    }
}
