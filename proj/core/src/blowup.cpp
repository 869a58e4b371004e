#include "hypermu/blowup.hpp"

#include <algorithm>
#include <cmath>

namespace hypermu {

namespace {

void check_unit2(double a, double b, const char* what) {
    if (std::abs(a * a + b * b - 1.0) > 1e-9 || a < 0.0 || b < 0.0)
        throw DomainError(std::string(what) + ": direction must be a nonnegative unit vector");
}

} // namespace

FirstBlowup first_blowup(const ExtendedPoint& z1, const ExtendedPoint& z2,
                         const SpectralParam& sp) {
    const double chi1 = chi(z1, sp);
    const double chi2 = chi(z2, sp);
    const double r1 = std::hypot(chi1, chi2);
    if (r1 == 0.0)
        throw IndeterminateDirectionError("first_blowup: chi(z1) = chi(z2) = 0, supply a direction");
    return {r1, chi1 / r1, chi2 / r1};
}

FirstBlowup first_blowup_direction(double omega1, double omega2) {
    check_unit2(omega1, omega2, "first_blowup_direction");
    return {0.0, omega1, omega2};
}

TripleBlowup triple_blowup(const SiteTriple& z, const SpectralParam& sp) {
    const double c1 = chi(z.z1, sp);
    const double c2 = chi(z.z2, sp);
    const double c3 = chi(z.z3, sp);
    const double R = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
    if (R == 0.0)
        throw IndeterminateDirectionError("triple_blowup: all chi vanish, supply a direction");
    return {R, c1 / R, c2 / R, c3 / R};
}

SecondBlowup second_blowup(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                           const SpectralParam& sp) {
    if (z1.is_infinity() || z2.is_infinity())
        throw DomainError("second_blowup requires points in the bounded chart");
    const double re_lam = sp.lambda().real();
    const Complex u1 = z1.value() + re_lam - q1;
    const Complex u2 = z2.value() + re_lam - q2;
    const double r2 = std::sqrt(std::norm(u1) + std::norm(u2));
    if (r2 == 0.0)
        throw IndeterminateDirectionError("second_blowup: both points on the singular locus");
    return {r2, u1 / r2, u2 / r2};
}

SecondBlowup second_blowup_direction(Complex eta1, Complex eta2) {
    if (std::abs(std::norm(eta1) + std::norm(eta2) - 1.0) > 1e-9)
        throw DomainError("second_blowup_direction: |eta1|^2 + |eta2|^2 must be 1");
    if (eta1.imag() < -1e-15 || eta2.imag() < -1e-15)
        throw DomainError("second_blowup_direction: eta must lie in the closed upper half-plane");
    return {0.0, eta1, eta2};
}

KPoint KPoint::from_interior(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1,
                             double q2, const SpectralParam& sp) {
    if (!z1.is_interior() || !z2.is_interior())
        throw DomainError("KPoint::from_interior requires interior points");
    KPoint k(z1, z2, q1, q2, sp);
    k.first = first_blowup(z1, z2, sp);
    k.second = second_blowup(z1, z2, q1, q2, sp);
    return k;
}

KPoint KPoint::boundary(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                        const SpectralParam& sp, const FirstBlowup& first,
                        std::optional<SecondBlowup> second) {
    KPoint k(z1, z2, q1, q2, sp);
    check_unit2(first.omega1, first.omega2, "KPoint::boundary");
    if (first.r1 < 0.0) throw DomainError("KPoint::boundary: r1 must be nonnegative");
    k.first = first;
    if (z1.is_infinity() || z2.is_infinity()) {
        if (second) throw DomainError("KPoint::boundary: second blow-up only in the bounded chart");
        return k;
    }
    const double re_lam = sp.lambda().real();
    const bool on_locus = z1.value() == Complex(q1 - re_lam, 0.0) &&
                          z2.value() == Complex(q2 - re_lam, 0.0);
    if (on_locus) {
        // r2 = 0: the eta direction is free data.
        if (second) k.second = second_blowup_direction(second->eta1, second->eta2);
    } else {
        k.second = second_blowup(z1, z2, q1, q2, sp);
    }
    return k;
}

bool in_boundary_at_infinity(const KPoint& k, double tol) {
    return k.first.r1 <= tol || k.first.omega1 <= tol || k.first.omega2 <= tol;
}

double compat_residual(const KPoint& k) {
    if (!k.second) throw DomainError("compat_residual: second blow-up absent");
    const Complex zl = k.lambda.fixed_point_value();
    const double re_lam = k.lambda.lambda().real();
    const SecondBlowup& s = *k.second;
    const double lhs =
        s.eta1.imag() * k.first.omega2 * std::norm(s.r2 * s.eta2 - re_lam + k.q2 - zl);
    const double rhs =
        s.eta2.imag() * k.first.omega1 * std::norm(s.r2 * s.eta1 - re_lam + k.q1 - zl);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

std::optional<OmegaRelationResidual> omega_relations_residual(const SiteTriple& z,
                                                              const PotentialQuad& q,
                                                              const SpectralParam& sp,
                                                              CyclicPerm sigma) {
    const auto idx = perm_indices(sigma);
    TripleBlowup t;
    FirstBlowup pair, composed;
    double f = 0;
    try {
        t = triple_blowup(z, sp);
        pair = first_blowup(z[idx[1]], z[idx[2]], sp);
        f = f_ratio(z[idx[1]], z[idx[2]], q[idx[1]], q[idx[2]], sp);
        const ExtendedPoint inner = phi(z[idx[1]], z[idx[2]], q[idx[1]], q[idx[2]], sp);
        composed = first_blowup(z[idx[0]], inner, sp);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    const std::array<double, 3> om{t.Omega1, t.Omega2, t.Omega3};
    const double o1 = om[idx[0]], o2 = om[idx[1]], o3 = om[idx[2]];

    auto rel = [](double lhs, double rhs) {
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
    };

    OmegaRelationResidual res;
    const double pair_sum = o2 * o2 + o3 * o3;
    res.oo = std::max(rel(o2 * o2, pair_sum * pair.omega1 * pair.omega1),
                      rel(o3 * o3, pair_sum * pair.omega2 * pair.omega2));
    const double comp_sum = o1 * o1 + f * f * pair_sum;
    res.of = std::max(rel(o1 * o1, comp_sum * composed.omega1 * composed.omega1),
                      rel(f * f * pair_sum, comp_sum * composed.omega2 * composed.omega2));
    return res;
}

SymMat2 m_matrix_real(double s1, double s2, double lambda) {
    SymMat2 m;
    m.m11 = (s1 * s1 - lambda * s1 + 2.0) * s2 * s2;
    m.m22 = (s2 * s2 - lambda * s2 + 2.0) * s1 * s1;
    m.m12 = -s1 * s2 * (s1 * s2 - lambda * (s1 + s2) / 2.0 + 2.0);
    return m;
}

SymMat2 m_matrix_real_from_points(double x1, double x2, const SpectralParam& sp) {
    if (sp.lambda().imag() != 0.0)
        throw DomainError("m_matrix_real_from_points requires real lambda");
    const double lam = sp.lambda().real();
    const Complex zl = sp.fixed_point_value();
    const double a1 = std::norm(x1 - zl);
    const double a2 = std::norm(x2 - zl);
    const double s1 = x1 + lam;
    const double s2 = x2 + lam;
    SymMat2 m;
    m.m11 = a1 * s2 * s2;
    m.m22 = a2 * s1 * s1;
    m.m12 = (a1 * s2 * s2 + a2 * s1 * s1) / 2.0 - std::norm(s1 + s2 + zl * s1 * s2);
    return m;
}

double det_m_factored(double s1, double s2, double lambda) {
    const double d = s1 - s2;
    return s1 * s1 * s2 * s2 * d * d * (2.0 - lambda * lambda / 4.0);
}

SymMat2 m_matrix_eta(Complex eta1, Complex eta2) {
    if (std::abs(std::norm(eta1) + std::norm(eta2) - 1.0) > 1e-9)
        throw DomainError("m_matrix_eta: |eta1|^2 + |eta2|^2 must be 1");
    SymMat2 m;
    m.m11 = std::norm(eta2);
    m.m22 = std::norm(eta1);
    m.m12 = -(std::conj(eta1) * eta2).real();
    return m;
}

double boundary_mu2_star(const KPoint& k) {
    const Complex lam = k.lambda.lambda();
    const Complex zl = k.lambda.fixed_point_value();
    const double w1 = k.first.omega1;
    const double w2 = k.first.omega2;
    const bool inf1 = k.z1.is_infinity();
    const bool inf2 = k.z2.is_infinity();

    // The omega-form of mu2_star, with each factor of |z_i|^2 divided out for
    // a point at infinity (chart substitution z = -1/w, w -> 0).
    double num, den;
    if (!inf1 && !inf2) {
        const Complex s1 = k.z1.value() + lam - k.q1;
        const Complex s2 = k.z2.value() + lam - k.q2;
        const double a1 = std::norm(k.z1.value() - zl);
        const double a2 = std::norm(k.z2.value() - zl);
        num = 2.0 * w1 * w2 * std::norm(s1 + s2 + zl * s1 * s2);
        den = (w1 * a1 * std::norm(s2) + w2 * a2 * std::norm(s1)) * (w1 + w2);
    } else if (inf1 && inf2) {
        num = 2.0 * w1 * w2 * std::norm(zl);
        den = (w1 + w2) * (w1 + w2);
    } else {
        const ExtendedPoint& fin = inf1 ? k.z2 : k.z1;
        const double qf = inf1 ? k.q2 : k.q1;
        const double w_inf = inf1 ? w1 : w2;
        const double w_fin = inf1 ? w2 : w1;
        const Complex sf = fin.value() + lam - qf;
        const double af = std::norm(fin.value() - zl);
        num = 2.0 * w1 * w2 * std::norm(1.0 + zl * sf);
        den = (w_inf * std::norm(sf) + w_fin * af) * (w1 + w2);
    }
    const double scale = std::max(num, 1.0e-300);
    if (!(den > 1e-14 * scale) || den == 0.0)
        throw SingularPointError("boundary_mu2_star: vanishing denominator, use a path limit");
    return num / den;
}

SigmaClass sigma_classify(const KPoint& k, double tol) {
    if (!in_boundary_at_infinity(k, tol))
        throw DomainError("sigma_classify: point not on the boundary at infinity");
    const Complex lam = k.lambda.lambda();
    if (std::abs(lam.imag()) > tol || std::abs(lam.real()) >= kBandEdge)
        throw DomainError("sigma_classify: K0 requires real lambda in the band");
    if (std::abs(k.q1) > tol || std::abs(k.q2) > tol)
        throw DomainError("sigma_classify: K0 requires q1 = q2 = 0");

    const ExtendedPoint minus_lambda = ExtendedPoint::real_boundary(-lam.real());
    const bool at1 = boundary_equal(k.z1, minus_lambda, tol);
    const bool at2 = boundary_equal(k.z2, minus_lambda, tol);

    if (at1 && at2) {
        // Both base points on the singular locus: the eta direction decides.
        if (!k.second) return {SigmaKind::NotSigma, 0};
        const Complex e1 = k.second->eta1;
        const Complex e2 = k.second->eta2;
        const Complex sum = e1 + e2;
        if (std::abs(sum) <= tol) return {SigmaKind::NotSigma, 0};
        double psi = std::arg(sum);
        if (psi < 0.0) psi = (psi >= -tol) ? 0.0 : psi + std::acos(-1.0);
        const Complex rot = std::polar(1.0, psi);
        const double resid = std::abs(e1 - rot * k.first.omega1) +
                             std::abs(e2 - rot * k.first.omega2);
        if (resid <= tol) return {SigmaKind::Sigma4, psi};
        return {SigmaKind::NotSigma, 0};
    }
    if (at1 && !at2) {
        if (k.first.omega1 <= tol) return {SigmaKind::Sigma2, 0};
        return {SigmaKind::NotSigma, 0};
    }
    if (!at1 && at2) {
        if (k.first.omega2 <= tol) return {SigmaKind::Sigma3, 0};
        return {SigmaKind::NotSigma, 0};
    }
    if (k.z1.is_boundary() && k.z2.is_boundary() && boundary_equal(k.z1, k.z2, tol) &&
        std::abs(k.first.omega1 - k.first.omega2) <= tol)
        return {SigmaKind::Sigma1, 0};
    return {SigmaKind::NotSigma, 0};
}

} // namespace hypermu
