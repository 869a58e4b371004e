#include "hypermu/halfplane.hpp"

#include <limits>

namespace hypermu {

bool boundary_equal(const ExtendedPoint& a, const ExtendedPoint& b, double tol) {
    if (a.is_interior() || b.is_interior()) return false;
    if (a.is_infinity() && b.is_infinity()) return true;
    if (a.is_infinity() || b.is_infinity()) {
        const ExtendedPoint& fin = a.is_infinity() ? b : a;
        const double x = fin.real_value();
        return x != 0.0 && std::abs(1.0 / x) <= tol;
    }
    const double x1 = a.real_value();
    const double x2 = b.real_value();
    if (std::abs(x1) > 1.0 && std::abs(x2) > 1.0)
        return std::abs(1.0 / x1 - 1.0 / x2) <= tol;
    return std::abs(x1 - x2) <= tol;
}

Complex fixed_point_value(Complex lambda) {
    const Complex disc = lambda * lambda - 8.0;
    // Degenerate discriminant: the quadratic formula would lose half the
    // digits at the double root, so collapse to -lambda/2 directly.
    if (std::abs(disc) <= 1e-13) return -lambda / 2.0;
    const Complex d = std::sqrt(disc);
    const Complex r1 = (-lambda + d) / 2.0;
    const Complex r2 = (-lambda - d) / 2.0;
    if (r1.imag() != r2.imag()) return r1.imag() > r2.imag() ? r1 : r2;
    return r1.real() >= r2.real() ? r1 : r2;
}

SpectralParam::SpectralParam(Complex lambda, double E, double eps)
    : lambda_(lambda), E_(E), eps_(eps) {
    if (!(lambda.imag() >= 0.0)) throw DomainError("spectral parameter requires Im(lambda) >= 0");
    if (!(E > 0.0 && E < kBandEdge)) throw DomainError("E must lie in (0, 2*sqrt(2))");
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    z_lambda_ = hypermu::fixed_point_value(lambda);
}

ExtendedPoint fixed_point(const SpectralParam& sp) {
    const Complex z = sp.fixed_point_value();
    if (z.imag() > 0.0) return ExtendedPoint::interior(z);
    return ExtendedPoint::real_boundary(z.real());
}

double c(const ExtendedPoint& w, const ExtendedPoint& z) {
    if (!w.is_interior() || !z.is_interior()) throw DomainError("c(w, z) requires interior points");
    return std::norm(w.value() - z.value()) / (w.value().imag() * z.value().imag());
}

double dist(const ExtendedPoint& w, const ExtendedPoint& z) {
    // arcosh(1 + c/2) written as 2 asinh(sqrt(c)/2), stable for tiny c.
    return 2.0 * std::asinh(std::sqrt(c(w, z)) / 2.0);
}

double cd(const ExtendedPoint& z, const SpectralParam& sp) {
    if (!z.is_interior()) return std::numeric_limits<double>::infinity();
    return detail::cd_raw(z.value(), sp.fixed_point_value());
}

double chi(const ExtendedPoint& z, const SpectralParam& sp, bool strict) {
    if (!z.is_interior()) return 0.0;
    const Complex zl = sp.fixed_point_value();
    if (z.value() == zl) {
        if (strict) throw DomainError("chi at the removable singularity z = z_lambda");
        return std::numeric_limits<double>::infinity();
    }
    return detail::chi_raw(z.value(), zl);
}

ExtendedPoint mobius_apply(double a, double b, double c, double d, const ExtendedPoint& z) {
    if (!(a * d - b * c > 0.0)) throw DomainError("mobius_apply requires ad - bc > 0");
    switch (z.kind()) {
    case PointKind::Interior:
        return ExtendedPoint::interior((a * z.value() + b) / (c * z.value() + d));
    case PointKind::RealBoundary: {
        const double x = z.real_value();
        const double den = c * x + d;
        if (den == 0.0) return ExtendedPoint::infinity();
        return ExtendedPoint::real_boundary((a * x + b) / den);
    }
    case PointKind::Infinity:
        if (c == 0.0) return ExtendedPoint::infinity();
        return ExtendedPoint::real_boundary(a / c);
    }
    throw DomainError("unreachable point kind");
}

} // namespace hypermu
