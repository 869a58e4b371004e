#pragma once

#include <optional>
#include <utility>

#include "hypermu/recursion.hpp"

namespace hypermu {

// Polar coordinates of (chi(z1), chi(z2)): chi(z_i) = r1 * omega_i, |omega| = 1.
struct FirstBlowup {
    double r1 = 0;
    double omega1 = 0, omega2 = 0;
};

// Polar coordinates of (chi(z1), chi(z2), chi(z3)).
struct TripleBlowup {
    double R1 = 0;
    double Omega1 = 0, Omega2 = 0, Omega3 = 0;
};

// z_i + Re(lambda) - q_i = r2 * eta_i with |eta1|^2 + |eta2|^2 = 1, r2 >= 0.
struct SecondBlowup {
    double r2 = 0;
    Complex eta1{0, 0}, eta2{0, 0};
};

FirstBlowup first_blowup(const ExtendedPoint& z1, const ExtendedPoint& z2,
                         const SpectralParam& sp);
// Direction-only first blow-up data for points on the corner chi1 = chi2 = 0.
FirstBlowup first_blowup_direction(double omega1, double omega2);

TripleBlowup triple_blowup(const SiteTriple& z, const SpectralParam& sp);

SecondBlowup second_blowup(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                           const SpectralParam& sp);
SecondBlowup second_blowup_direction(Complex eta1, Complex eta2);

// A point of the blown-up compactification: base coordinates plus explicit
// blow-up data. On the boundary at infinity the directions are independent
// data, so they are stored rather than recomputed.
struct KPoint {
    ExtendedPoint z1, z2;
    double q1 = 0, q2 = 0;
    SpectralParam lambda;
    FirstBlowup first;
    std::optional<SecondBlowup> second; // absent when either point is at infinity

    static KPoint from_interior(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1,
                                double q2, const SpectralParam& sp);
    // Boundary point with supplied directional data. Off the singular locus
    // the second blow-up is derived from the base coordinates instead.
    static KPoint boundary(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                           const SpectralParam& sp, const FirstBlowup& first,
                           std::optional<SecondBlowup> second = std::nullopt);

    KPoint(ExtendedPoint a, ExtendedPoint b, double qa, double qb, SpectralParam sp)
        : z1(a), z2(b), q1(qa), q2(qb), lambda(sp) {}
};

// Membership in the boundary at infinity: r1 = 0 or omega1 = 0 or omega2 = 0.
bool in_boundary_at_infinity(const KPoint& k, double tol = 0.0);

// Residual of the compatibility constraint tying the two blow-ups together,
//   Im(eta1) w2 |r2 eta2 - Re(lambda) + q2 - z_lambda|^2
//     = Im(eta2) w1 |r2 eta1 - Re(lambda) + q1 - z_lambda|^2,
// normalized by the larger side.
double compat_residual(const KPoint& k);

struct OmegaRelationResidual {
    double oo = 0; // pair-vs-triple polar relations for (z_s2, z_s3)
    double of = 0; // same relations through the composed point (z_s1, phi(...))
};

// Residuals of the two polar-coordinate identities for a cyclic permutation.
// Degenerate configurations (vanishing radii) yield nullopt (skipped).
std::optional<OmegaRelationResidual> omega_relations_residual(const SiteTriple& z,
                                                              const PotentialQuad& q,
                                                              const SpectralParam& sp,
                                                              CyclicPerm sigma);

struct SymMat2 {
    double m11 = 0, m12 = 0, m22 = 0;
    double det() const { return m11 * m22 - m12 * m12; }
    double trace() const { return m11 + m22; }
    double quad_form(double x, double y) const { return m11 * x * x + 2 * m12 * x * y + m22 * y * y; }
};

// Quadratic-form matrix for two real boundary points, in s_i = z_i + lambda:
//   m11 = (s1^2 - lambda s1 + 2) s2^2
//   m12 = -s1 s2 (s1 s2 - lambda (s1 + s2)/2 + 2)
//   m22 = (s2^2 - lambda s2 + 2) s1^2
SymMat2 m_matrix_real(double s1, double s2, double lambda);

// The same matrix built from |z_i - z_lambda|^2-based entries.
SymMat2 m_matrix_real_from_points(double x1, double x2, const SpectralParam& sp);

// det of m_matrix_real in factored form: s1^2 s2^2 (s1 - s2)^2 (2 - lambda^2/4).
double det_m_factored(double s1, double s2, double lambda);

// Positive semi-definite matrix [[|eta2|^2, -Re(conj(eta1) eta2)], [., |eta1|^2]].
SymMat2 m_matrix_eta(Complex eta1, Complex eta2);

// Continuous extension of mu2_star through its omega-form at a boundary point;
// throws SingularPointError where the denominator vanishes (use a path limit).
double boundary_mu2_star(const KPoint& k);

enum class SigmaKind { Sigma1, Sigma2, Sigma3, Sigma4, NotSigma };

struct SigmaClass {
    SigmaKind kind = SigmaKind::NotSigma;
    double psi = 0; // phase, Sigma4 only
};

// Classification of a point of K0 (boundary at infinity, lambda real in the
// band, q = 0) against the singular set where the extended mu2 equals 1.
SigmaClass sigma_classify(const KPoint& k, double tol = 1e-9);

// Wire format: {"z1": .., "z2": .., "q": [q1, q2], "lambda": [re, im],
// "r1": .., "omega": [w1, w2], "r2": .., "eta": [[re, im], [re, im]]}.
// Complex values serialize as [re, im]; the point at infinity as "iinf".
std::string to_json(const KPoint& k);
KPoint kpoint_from_json(const std::string& text);

} // namespace hypermu
