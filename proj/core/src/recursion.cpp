#include "hypermu/recursion.hpp"

#include <cmath>
#include <limits>

namespace hypermu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Term {
    Complex value{0, 0}; // -1/s contribution; 0 for the point at infinity
    bool pole = false;   // s == 0
};

Term phi_term(const ExtendedPoint& z, double q, Complex lam) {
    if (!std::isfinite(q)) throw DomainError("potential must be finite");
    if (z.is_infinity()) return {Complex(0, 0), false};
    const Complex s = z.value() + lam - q;
    if (s == Complex(0, 0)) return {Complex(0, 0), true};
    return {-1.0 / s, false};
}

void require_interior(const ExtendedPoint& z, const char* what) {
    if (!z.is_interior()) throw DomainError(std::string(what) + " requires interior points");
}

} // namespace

ExtendedPoint phi(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                  const SpectralParam& sp) {
    const Term t1 = phi_term(z1, q1, sp.lambda());
    const Term t2 = phi_term(z2, q2, sp.lambda());
    if (t1.pole && t2.pole) throw IndeterminateError("phi: both s_i vanish (0/0)");
    if (t1.pole || t2.pole) return ExtendedPoint::infinity();
    const Complex v = t1.value + t2.value;
    if (v.imag() > 0.0) return ExtendedPoint::interior(v);
    return ExtendedPoint::real_boundary(v.real());
}

double p_factor(const ExtendedPoint& z, const SpectralParam& sp) {
    require_interior(z, "p_factor");
    return 1.0 + sp.lambda().imag() / z.value().imag();
}

double mu2(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
           const SpectralParam& sp) {
    require_interior(z1, "mu2");
    require_interior(z2, "mu2");
    const Complex zl = sp.fixed_point_value();
    if (z1.value() == zl && z2.value() == zl)
        throw DomainError("mu2 is undefined at (z_lambda, z_lambda)");
    return detail::mu2_raw(z1.value(), z2.value(), q1, q2, sp.lambda(), zl);
}

double mu2_star(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                const SpectralParam& sp) {
    require_interior(z1, "mu2_star");
    require_interior(z2, "mu2_star");
    const Complex zl = sp.fixed_point_value();
    const Complex lam = sp.lambda();
    const double chi1 = chi(z1, sp);
    const double chi2 = chi(z2, sp);
    const Complex s1 = z1.value() + lam - q1;
    const Complex s2 = z2.value() + lam - q2;
    const double num = 2.0 * chi1 * chi2 * std::norm(s1 + s2 + zl * (s1 * s2));
    // chi_i |z_i - z_lambda|^2 = Im(z_i)
    const double den =
        (z1.value().imag() * std::norm(s2) + z2.value().imag() * std::norm(s1)) * (chi1 + chi2);
    if (den == 0.0) throw SingularPointError("mu2_star: vanishing denominator");
    return num / den;
}

double chi_phi_closed(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                      const SpectralParam& sp) {
    if (z1.is_infinity() || z2.is_infinity())
        throw DomainError("chi_phi_closed requires points in the bounded chart");
    const Complex lam = sp.lambda();
    const Complex zl = sp.fixed_point_value();
    const Complex s1 = z1.value() + lam - q1;
    const Complex s2 = z2.value() + lam - q2;
    const double num = (z1.value().imag() + lam.imag()) * std::norm(s2) +
                       (z2.value().imag() + lam.imag()) * std::norm(s1);
    const double den = std::norm(s1 + s2 + zl * (s1 * s2));
    if (den == 0.0) throw SingularPointError("chi_phi_closed: vanishing denominator");
    return num / den;
}

std::array<double, 3> nu(const SiteTriple& z, const SpectralParam& sp) {
    require_interior(z.z1, "nu");
    require_interior(z.z2, "nu");
    require_interior(z.z3, "nu");
    const Complex zl = sp.fixed_point_value();
    const double c1 = detail::cd_raw(z.z1.value(), zl);
    const double c2 = detail::cd_raw(z.z2.value(), zl);
    const double c3 = detail::cd_raw(z.z3.value(), zl);
    const double s = c1 + c2 + c3;
    if (s == 0.0) throw DomainError("nu is undefined with all three points at z_lambda");
    return {c1 / s, c2 / s, c3 / s};
}

double mu3p_direct(const SiteTriple& z, const PotentialQuad& q, const SpectralParam& sp,
                   double p) {
    if (!(p > 1.0)) throw std::invalid_argument("mu3p requires p > 1");
    require_interior(z.z1, "mu3p_direct");
    require_interior(z.z2, "mu3p_direct");
    require_interior(z.z3, "mu3p_direct");
    const Complex zl = sp.fixed_point_value();
    double denom = 0.0;
    for (int i = 0; i < 3; ++i) denom += std::pow(detail::cd_raw(z[i].value(), zl), p);
    if (denom == 0.0) throw DomainError("mu3p_direct: all three points at z_lambda");
    double num = 0.0;
    for (CyclicPerm s : kCyclicPerms) {
        const auto idx = perm_indices(s);
        const ExtendedPoint inner = phi(z[idx[1]], z[idx[2]], q[idx[1]], q[idx[2]], sp);
        if (!inner.is_interior()) return kInf;
        const ExtendedPoint outer = phi(z[idx[0]], inner, q[idx[0]], q.q4, sp);
        if (!outer.is_interior()) return kInf;
        num += std::pow(detail::cd_raw(outer.value(), zl), p);
    }
    return num / denom;
}

double mu3p_factored(const SiteTriple& z, const PotentialQuad& q, const SpectralParam& sp,
                     double p) {
    if (!(p > 1.0)) throw std::invalid_argument("mu3p requires p > 1");
    const std::array<double, 3> w = nu(z, sp);
    double denom = 0.0;
    for (double wi : w) denom += std::pow(wi, p);
    double num = 0.0;
    for (CyclicPerm s : kCyclicPerms) {
        const auto idx = perm_indices(s);
        const ExtendedPoint inner = phi(z[idx[1]], z[idx[2]], q[idx[1]], q[idx[2]], sp);
        if (!inner.is_interior()) return kInf;
        const double mu_inner = mu2(z[idx[1]], z[idx[2]], q[idx[1]], q[idx[2]], sp);
        const double mu_outer = mu2(z[idx[0]], inner, q[idx[0]], q.q4, sp);
        const double term = mu_outer * (0.5 * w[idx[0]] + 0.25 * mu_inner * (w[idx[1]] + w[idx[2]]));
        num += std::pow(term, p);
    }
    return num / denom;
}

double f_ratio(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
               const SpectralParam& sp) {
    require_interior(z1, "f_ratio");
    require_interior(z2, "f_ratio");
    const double chi1 = chi(z1, sp);
    const double chi2 = chi(z2, sp);
    const double r1 = std::hypot(chi1, chi2);
    if (r1 == 0.0) throw IndeterminateDirectionError("f_ratio: r1 = 0");
    const ExtendedPoint f = phi(z1, z2, q1, q2, sp);
    return chi(f, sp, /*strict=*/false) / r1;
}

double f_ratio_mu2(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                   const SpectralParam& sp) {
    require_interior(z1, "f_ratio_mu2");
    require_interior(z2, "f_ratio_mu2");
    const double chi1 = chi(z1, sp);
    const double chi2 = chi(z2, sp);
    const double r1 = std::hypot(chi1, chi2);
    if (r1 == 0.0) throw IndeterminateDirectionError("f_ratio_mu2: r1 = 0");
    const double w1 = chi1 / r1;
    const double w2 = chi2 / r1;
    const double m = mu2(z1, z2, q1, q2, sp);
    if (m == 0.0) throw SingularPointError("f_ratio_mu2: mu2 = 0, use f_ratio");
    return 2.0 * w1 * w2 / (m * (w1 + w2));
}

} // namespace hypermu
