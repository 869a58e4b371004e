#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypermu/blowup.hpp"
#include "hypermu/rng.hpp"

using namespace hypermu;

namespace {

const double kPi = std::acos(-1.0);
const SpectralParam kReal0{Complex(0.0, 0.0)};

ExtendedPoint pt(double re, double im) { return ExtendedPoint::interior({re, im}); }

} // namespace

TEST_CASE("first blow-up directions") {
    const auto equal = first_blowup(pt(0, 1), pt(0, 1), kReal0);
    CHECK(equal.omega1 == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(equal.omega2 == doctest::Approx(equal.omega1).epsilon(1e-15));

    const auto mixed = first_blowup(pt(0, 1), ExtendedPoint::real_boundary(2.0), kReal0);
    CHECK(mixed.omega1 == 1.0);
    CHECK(mixed.omega2 == 0.0);
    CHECK(mixed.r1 == doctest::Approx(chi(pt(0, 1), kReal0)).epsilon(1e-15));

    // cd(i) = cd(2i) at lambda = 0, hence equal chi and equal omega.
    const auto i2i = first_blowup(pt(0, 1), pt(0, 2), kReal0);
    CHECK(i2i.omega1 == doctest::Approx(i2i.omega2).epsilon(1e-14));

    CHECK_THROWS_AS(first_blowup(ExtendedPoint::real_boundary(0), ExtendedPoint::infinity(), kReal0),
                    IndeterminateDirectionError);
    const auto hinted = first_blowup_direction(0.6, 0.8);
    CHECK(hinted.r1 == 0.0);
    CHECK_THROWS_AS(first_blowup_direction(0.5, 0.5), DomainError);
}

TEST_CASE("triple blow-up") {
    const SiteTriple sym{pt(1, 2), pt(1, 2), pt(1, 2)};
    const auto t = triple_blowup(sym, kReal0);
    CHECK(t.Omega1 == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(t.Omega2 == doctest::Approx(t.Omega1).epsilon(1e-15));

    const SiteTriple with_boundary{pt(1, 2), ExtendedPoint::real_boundary(0.3), pt(0, 1)};
    const auto tb = triple_blowup(with_boundary, kReal0);
    CHECK(tb.Omega2 == 0.0);

    // Omega ratios reproduce chi ratios.
    const SiteTriple z{pt(0, 1), pt(2, 0.5), pt(-1, 3)};
    const auto tz = triple_blowup(z, kReal0);
    const double c1 = chi(z.z1, kReal0), c2 = chi(z.z2, kReal0);
    CHECK(tz.Omega1 / tz.Omega2 == doctest::Approx(c1 / c2).epsilon(1e-12));
}

TEST_CASE("second blow-up") {
    const SpectralParam sp(Complex(0.5, 0.0));
    CHECK_THROWS_AS(second_blowup(ExtendedPoint::real_boundary(-0.5),
                                  ExtendedPoint::real_boundary(-0.5), 0, 0, sp),
                    IndeterminateDirectionError);
    CHECK_THROWS_AS(second_blowup(ExtendedPoint::infinity(), pt(0, 1), 0, 0, sp), DomainError);

    // Purely imaginary offsets give eta = (i, i)/sqrt(2).
    const auto s = second_blowup(pt(-0.5, 0.3), pt(-0.5, 0.3), 0, 0, sp);
    CHECK(s.eta1.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.eta1.imag() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));

    // Round trip: z_i = r2 eta_i - Re(lambda) + q_i.
    const CounterRng rng(2);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const SpectralParam spr(Complex(rng.uniform(i, 0, -2, 2), rng.uniform(i, 1, 0, 0.5)));
        const Complex z1(rng.uniform(i, 2, -4, 4), rng.log_uniform(i, 3, 1e-2, 1e2));
        const Complex z2(rng.uniform(i, 4, -4, 4), rng.log_uniform(i, 5, 1e-2, 1e2));
        const double q1 = rng.uniform(i, 6, -2, 2);
        const double q2 = rng.uniform(i, 7, -2, 2);
        const auto sb = second_blowup(pt(z1.real(), z1.imag()), pt(z2.real(), z2.imag()), q1, q2, spr);
        const Complex back1 = sb.r2 * sb.eta1 - spr.lambda().real() + q1;
        const Complex back2 = sb.r2 * sb.eta2 - spr.lambda().real() + q2;
        CHECK(std::abs(back1 - z1) <= 1e-14 * std::max(1.0, std::abs(z1)));
        CHECK(std::abs(back2 - z2) <= 1e-14 * std::max(1.0, std::abs(z2)));
        CHECK(sb.r2 >= z1.imag());
        CHECK(sb.r2 >= z2.imag());
        CHECK(std::abs(std::norm(sb.eta1) + std::norm(sb.eta2) - 1.0) <= 1e-12);
    }
}

TEST_CASE("compatibility residual") {
    const CounterRng rng(3);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const SpectralParam sp(Complex(rng.uniform(i, 0, -2, 2), rng.uniform(i, 1, 0, 0.5)));
        const KPoint k = KPoint::from_interior(
            pt(rng.uniform(i, 2, -4, 4), rng.log_uniform(i, 3, 1e-2, 1e2)),
            pt(rng.uniform(i, 4, -4, 4), rng.log_uniform(i, 5, 1e-2, 1e2)),
            rng.uniform(i, 6, -2, 2), rng.uniform(i, 7, -2, 2), sp);
        CHECK(compat_residual(k) <= 1e-10);
    }

    // Hand-built violation: swap the omega weights.
    KPoint bad = KPoint::from_interior(pt(0, 1), pt(2, 0.25), 0.5, -0.5, kReal0);
    std::swap(bad.first.omega1, bad.first.omega2);
    CHECK(compat_residual(bad) > 1e-3);

    // Singular-locus point with symmetric data: residual zero.
    const SpectralParam sp05(Complex(0.5, 0.0));
    const Complex eta(0.0, 1 / std::sqrt(2.0));
    const KPoint locus = KPoint::boundary(
        ExtendedPoint::real_boundary(-0.5), ExtendedPoint::real_boundary(-0.5), 0, 0, sp05,
        first_blowup_direction(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)),
        second_blowup_direction(eta, eta));
    CHECK(compat_residual(locus) == 0.0);
}

TEST_CASE("polar relation residuals") {
    const CounterRng rng(5);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const SpectralParam sp(Complex(rng.uniform(i, 0, -2, 2), rng.uniform(i, 1, 0, 0.5)));
        const SiteTriple z{pt(rng.uniform(i, 2, -4, 4), rng.log_uniform(i, 3, 1e-2, 1e2)),
                           pt(rng.uniform(i, 4, -4, 4), rng.log_uniform(i, 5, 1e-2, 1e2)),
                           pt(rng.uniform(i, 6, -4, 4), rng.log_uniform(i, 7, 1e-2, 1e2))};
        const PotentialQuad q{rng.uniform(i, 8, -2, 2), rng.uniform(i, 9, -2, 2),
                              rng.uniform(i, 10, -2, 2), rng.uniform(i, 11, -2, 2)};
        for (CyclicPerm s : kCyclicPerms) {
            const auto res = omega_relations_residual(z, q, sp, s);
            REQUIRE(res.has_value());
            CHECK(res->oo <= 1e-10);
            CHECK(res->of <= 1e-10);
        }
    }

    // Symmetric triple: both sides equal by symmetry.
    const SiteTriple sym{pt(0, 1), pt(0, 1), pt(0, 1)};
    const auto res = omega_relations_residual(sym, PotentialQuad{}, kReal0, CyclicPerm::c123);
    REQUIRE(res.has_value());
    CHECK(res->oo <= 1e-14);
}

TEST_CASE("M matrix over the real boundary") {
    const SymMat2 m = m_matrix_real(1, 2, 1);
    CHECK(m.m11 == 8.0);
    CHECK(m.m12 == -5.0);
    CHECK(m.m22 == 4.0);
    CHECK(m.det() == 7.0);
    CHECK(det_m_factored(1, 2, 1) == doctest::Approx(7.0).epsilon(1e-15));

    // Same matrix from the |z - z_lambda|^2 entries.
    const SpectralParam sp1(Complex(1.0, 0.0));
    const SymMat2 mp = m_matrix_real_from_points(0.0, 1.0, sp1); // s_i = z_i + 1 = (1, 2)
    CHECK(mp.m11 == doctest::Approx(m.m11).epsilon(1e-12));
    CHECK(mp.m12 == doctest::Approx(m.m12).epsilon(1e-12));
    CHECK(mp.m22 == doctest::Approx(m.m22).epsilon(1e-12));

    // Rank-one structure on the diagonal s1 = s2 = s.
    const double s = 1.7, lam = 0.9;
    const SymMat2 diag = m_matrix_real(s, s, lam);
    const double scale = s * s * (s * s - lam * s + 2);
    CHECK(diag.m11 == doctest::Approx(scale).epsilon(1e-14));
    CHECK(diag.m12 == doctest::Approx(-scale).epsilon(1e-14));
    CHECK(det_m_factored(s, s, lam) == 0.0);
    CHECK(det_m_factored(1, 2, kBandEdge) == doctest::Approx(0.0).epsilon(1e-14));

    const CounterRng rng(6);
    for (std::uint64_t i = 0; i < 5000; ++i) {
        const double s1 = rng.uniform(i, 0, -6, 6);
        const double s2 = rng.uniform(i, 1, -6, 6);
        const double l = rng.uniform(i, 2, -2.8, 2.8);
        const SymMat2 mm = m_matrix_real(s1, s2, l);
        CHECK(mm.trace() >= 0.0);
        const double direct = mm.det();
        const double fact = det_m_factored(s1, s2, l);
        const double cancel_scale = std::abs(mm.m11 * mm.m22) + mm.m12 * mm.m12 + 1.0;
        CHECK(std::abs(direct - fact) <= 1e-10 * cancel_scale);
    }
}

TEST_CASE("eta matrix") {
    const double r = 1 / std::sqrt(2.0);
    const SymMat2 aligned = m_matrix_eta({0, r}, {0, r});
    CHECK(aligned.det() == doctest::Approx(0.0).epsilon(1e-15));
    // Kernel vector (|eta1|, |eta2|) for equal arguments.
    CHECK(std::abs(aligned.m11 * r + aligned.m12 * r) <= 1e-15);

    // Orthogonal arguments: det is |eta1|^2 |eta2|^2 sin^2(pi/2) = 1/4.
    const SymMat2 orth = m_matrix_eta({r, 0}, {0, r});
    CHECK(orth.det() == doctest::Approx(0.25).epsilon(1e-15));
    // Half-angle form of the same: |eta1|^2 |eta2|^2 (1 - cos(2 dpsi)) / 2.
    CHECK(orth.det() == doctest::Approx(0.25 * (1 - std::cos(kPi)) / 2).epsilon(1e-14));

    // Positive semi-definite over the direction quarter-circle.
    const CounterRng rng(7);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double a1 = rng.uniform(i, 0, 0, kPi);
        const double a2 = rng.uniform(i, 1, 0, kPi);
        const double m1 = rng.uniform(i, 2, 0, 1);
        const Complex e1 = std::polar(m1, a1);
        const Complex e2 = std::polar(std::sqrt(1 - m1 * m1), a2);
        const SymMat2 m = m_matrix_eta(e1, e2);
        for (int g = 0; g <= 16; ++g) {
            const double th = kPi / 2 * g / 16.0;
            CHECK(m.quad_form(std::cos(th), std::sin(th)) >= -1e-12);
        }
        CHECK(m.det() >= -1e-15);
    }
}

TEST_CASE("boundary extension of mu2_star") {
    const double r10 = std::sqrt(10.0);
    {
        // Both points at infinity with equal weights.
        const KPoint k = KPoint::boundary(ExtendedPoint::infinity(), ExtendedPoint::infinity(), 0,
                                          0, kReal0,
                                          first_blowup_direction(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)));
        CHECK(boundary_mu2_star(k) == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        // Equal real base points: 4 w1 w2 / (w1 + w2)^2 independent of x.
        const KPoint k = KPoint::boundary(ExtendedPoint::real_boundary(0.5),
                                          ExtendedPoint::real_boundary(0.5), 0, 0, kReal0,
                                          first_blowup_direction(1 / r10, 3 / r10));
        CHECK(boundary_mu2_star(k) == doctest::Approx(0.75).epsilon(1e-12));
    }
    {
        // Vanishing weight on a regular point: extension value 0.
        const KPoint k = KPoint::boundary(ExtendedPoint::real_boundary(1.2), pt(0, 1), 0, 0,
                                          kReal0, first_blowup_direction(0, 1));
        CHECK(boundary_mu2_star(k) == 0.0);
    }
    {
        // Singular denominator (one-sided locus data): rejected.
        const SpectralParam sp(Complex(1.0, 0.0));
        const KPoint k = KPoint::boundary(ExtendedPoint::real_boundary(-1.0),
                                          ExtendedPoint::real_boundary(0.3), 0, 0, sp,
                                          first_blowup_direction(0, 1));
        CHECK_THROWS_AS(boundary_mu2_star(k), SingularPointError);
    }
}

TEST_CASE("sigma classification") {
    const double r2 = 1 / std::sqrt(2.0);
    {
        const KPoint k = KPoint::boundary(ExtendedPoint::real_boundary(0.5),
                                          ExtendedPoint::real_boundary(0.5), 0, 0, kReal0,
                                          first_blowup_direction(r2, r2));
        CHECK(sigma_classify(k).kind == SigmaKind::Sigma1);
    }
    {
        const KPoint k = KPoint::boundary(ExtendedPoint::infinity(), ExtendedPoint::infinity(), 0,
                                          0, kReal0, first_blowup_direction(r2, r2));
        CHECK(sigma_classify(k).kind == SigmaKind::Sigma1);
    }
    {
        const SpectralParam sp(Complex(1.0, 0.0));
        const KPoint k = KPoint::boundary(ExtendedPoint::real_boundary(-1.0),
                                          ExtendedPoint::real_boundary(0.3), 0, 0, sp,
                                          first_blowup_direction(0, 1));
        CHECK(sigma_classify(k).kind == SigmaKind::Sigma2);
        const KPoint m = KPoint::boundary(ExtendedPoint::real_boundary(0.3),
                                          ExtendedPoint::real_boundary(-1.0), 0, 0, sp,
                                          first_blowup_direction(1, 0));
        CHECK(sigma_classify(m).kind == SigmaKind::Sigma3);
    }
    {
        const SpectralParam sp(Complex(0.5, 0.0));
        const Complex rot = std::polar(1.0, kPi / 4);
        const KPoint k = KPoint::boundary(ExtendedPoint::real_boundary(-0.5),
                                          ExtendedPoint::real_boundary(-0.5), 0, 0, sp,
                                          first_blowup_direction(r2, r2),
                                          second_blowup_direction(rot * r2, rot * r2));
        const SigmaClass c = sigma_classify(k);
        CHECK(c.kind == SigmaKind::Sigma4);
        CHECK(c.psi == doctest::Approx(kPi / 4).epsilon(1e-12));
    }
    {
        // Unequal weights at an off-locus double point: not singular.
        const KPoint k = KPoint::boundary(ExtendedPoint::real_boundary(0.5),
                                          ExtendedPoint::real_boundary(0.5), 0, 0, kReal0,
                                          first_blowup_direction(0.6, 0.8));
        CHECK(sigma_classify(k).kind == SigmaKind::NotSigma);
    }
    {
        // Misaligned eta at the locus: not singular.
        const SpectralParam sp(Complex(0.5, 0.0));
        const KPoint k = KPoint::boundary(
            ExtendedPoint::real_boundary(-0.5), ExtendedPoint::real_boundary(-0.5), 0, 0, sp,
            first_blowup_direction(r2, r2),
            second_blowup_direction(std::polar(r2, 0.3), std::polar(r2, 2.1)));
        CHECK(sigma_classify(k).kind == SigmaKind::NotSigma);
    }
    {
        // Interior point: not in K0.
        const KPoint k = KPoint::from_interior(pt(0, 1), pt(0, 2), 0, 0, kReal0);
        CHECK_THROWS_AS(sigma_classify(k), DomainError);
    }
    {
        // Potentials off zero: not in K0.
        const KPoint k = KPoint::boundary(ExtendedPoint::real_boundary(0.5),
                                          ExtendedPoint::real_boundary(0.5), 0.2, 0, kReal0,
                                          first_blowup_direction(r2, r2));
        CHECK_THROWS_AS(sigma_classify(k), DomainError);
    }
}

TEST_CASE("KPoint JSON round trip") {
    const SpectralParam sp(Complex(0.4, 0.1));
    const KPoint k = KPoint::from_interior(pt(1.25, 0.5), pt(-2, 3), 0.75, -0.25, sp);
    const std::string text = to_json(k);
    CHECK(text.find("\"z1\"") != std::string::npos);
    CHECK(text.find("\"omega\"") != std::string::npos);
    const KPoint back = kpoint_from_json(text);
    CHECK(std::abs(back.z1.value() - k.z1.value()) <= 1e-15);
    CHECK(back.q2 == k.q2);
    CHECK(back.first.omega1 == doctest::Approx(k.first.omega1).epsilon(1e-15));
    REQUIRE(back.second.has_value());
    CHECK(std::abs(back.second->eta1 - k.second->eta1) <= 1e-15);

    const KPoint binf = KPoint::boundary(ExtendedPoint::infinity(), ExtendedPoint::real_boundary(2),
                                         0, 0, kReal0, first_blowup_direction(0, 1));
    const std::string btext = to_json(binf);
    CHECK(btext.find("iinf") != std::string::npos);
    const KPoint bback = kpoint_from_json(btext);
    CHECK(bback.z1.is_infinity());
    CHECK(bback.z2.real_value() == 2.0);
}

TEST_CASE("boundary membership") {
    CHECK(in_boundary_at_infinity(KPoint::boundary(ExtendedPoint::real_boundary(0.5),
                                                   ExtendedPoint::real_boundary(0.5), 0, 0,
                                                   kReal0, first_blowup_direction(0.6, 0.8))));
    const KPoint mixed = KPoint::boundary(ExtendedPoint::real_boundary(1.2), pt(0, 1), 0, 0,
                                          kReal0, first_blowup_direction(0, 1));
    CHECK(in_boundary_at_infinity(mixed));
    CHECK_FALSE(in_boundary_at_infinity(KPoint::from_interior(pt(0, 1), pt(0, 2), 0, 0, kReal0)));
}
