#pragma once

#include <complex>
#include <cmath>

#include "hypermu/errors.hpp"

namespace hypermu {

using Complex = std::complex<double>;

inline constexpr double kBandEdge = 2.8284271247461903; // 2*sqrt(2)

// Chart near infinity: w = -1/z. The point at infinity has w = 0.
inline Complex to_chart(Complex z) { return -1.0 / z; }
inline Complex from_chart(Complex w) { return -1.0 / w; }

enum class PointKind { Interior, RealBoundary, Infinity };

// A point of the closed upper half-plane: an interior point (Im > 0), a point
// of the real axis, or the single point at infinity (chart value w = 0).
class ExtendedPoint {
public:
    static ExtendedPoint interior(Complex z) {
        if (!(z.imag() > 0.0)) throw DomainError("interior point requires Im(z) > 0");
        return ExtendedPoint(PointKind::Interior, z);
    }
    static ExtendedPoint real_boundary(double x) {
        if (!std::isfinite(x)) throw DomainError("real boundary point must be finite");
        return ExtendedPoint(PointKind::RealBoundary, Complex(x, 0.0));
    }
    static ExtendedPoint infinity() { return ExtendedPoint(PointKind::Infinity, Complex(0, 0)); }

    // Classify a finite complex value with Im >= 0.
    static ExtendedPoint classify(Complex z) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw DomainError("cannot classify a non-finite value");
        if (z.imag() > 0.0) return interior(z);
        if (z.imag() == 0.0) return real_boundary(z.real());
        throw DomainError("point below the real axis");
    }

    // Inverse chart: z = -1/w, with w = 0 mapping to the point at infinity.
    static ExtendedPoint from_chart_value(Complex w) {
        if (w == Complex(0, 0)) return infinity();
        return classify(from_chart(w));
    }

    PointKind kind() const { return kind_; }
    bool is_interior() const { return kind_ == PointKind::Interior; }
    bool is_real_boundary() const { return kind_ == PointKind::RealBoundary; }
    bool is_infinity() const { return kind_ == PointKind::Infinity; }
    bool is_boundary() const { return kind_ != PointKind::Interior; }

    // Finite value (interior or real boundary).
    Complex value() const {
        if (is_infinity()) throw DomainError("value() on the point at infinity");
        return value_;
    }
    double real_value() const {
        if (!is_real_boundary()) throw DomainError("real_value() on a non-boundary point");
        return value_.real();
    }
    // Chart value w = -1/z; 0 for the point at infinity.
    Complex chart() const {
        if (is_infinity()) return Complex(0, 0);
        if (value_ == Complex(0, 0)) throw DomainError("chart() at z = 0");
        return to_chart(value_);
    }

    friend bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) {
        return a.kind_ == b.kind_ && (a.kind_ == PointKind::Infinity || a.value_ == b.value_);
    }
    friend bool operator!=(const ExtendedPoint& a, const ExtendedPoint& b) { return !(a == b); }

private:
    ExtendedPoint(PointKind k, Complex v) : kind_(k), value_(v) {}
    PointKind kind_;
    Complex value_;
};

// Equality of two boundary points, compared in chart coordinates when both
// sit in the unbounded chart (|x| > 1); the point at infinity has chart 0.
bool boundary_equal(const ExtendedPoint& a, const ExtendedPoint& b, double tol = 1e-12);

// The spectral parameter: lambda in the closed upper half-plane together with
// the rectangle R(E, eps) = { |Re| <= E, 0 < Im <= eps } it is probed in.
// The derived fixed point z_lambda (root of z^2 + lambda z + 2 = 0 with the
// larger imaginary part, ties broken by larger real part) is cached.
class SpectralParam {
public:
    explicit SpectralParam(Complex lambda, double E = 2.5, double eps = 0.5);

    Complex lambda() const { return lambda_; }
    double E() const { return E_; }
    double eps() const { return eps_; }

    bool in_region() const {
        return std::abs(lambda_.real()) <= E_ && lambda_.imag() > 0.0 && lambda_.imag() <= eps_;
    }
    bool in_region_closure() const {
        return std::abs(lambda_.real()) <= E_ && lambda_.imag() >= 0.0 && lambda_.imag() <= eps_;
    }

    Complex fixed_point_value() const { return z_lambda_; }

private:
    Complex lambda_;
    double E_;
    double eps_;
    Complex z_lambda_;
};

// Root of z^2 + lambda z + 2 = 0 in the closed upper half-plane, as a point:
// interior when Im(lambda) > 0 or |Re(lambda)| < 2*sqrt(2), real otherwise.
ExtendedPoint fixed_point(const SpectralParam& sp);

// Raw branch selection, usable without a SpectralParam wrapper.
Complex fixed_point_value(Complex lambda);

// c(w, z) = |w - z|^2 / (Im w Im z) = 2(cosh(dist(w, z)) - 1).
double c(const ExtendedPoint& w, const ExtendedPoint& z);

// Hyperbolic distance, arcosh(1 + c/2).
double dist(const ExtendedPoint& w, const ExtendedPoint& z);

// cd(z) = |z - z_lambda|^2 / Im z. +infinity on the boundary, 0 at z_lambda.
double cd(const ExtendedPoint& z, const SpectralParam& sp);

// chi(z) = Im z / |z - z_lambda|^2 = 1/cd. Vanishes on the boundary.
// At z = z_lambda the value is +infinity; in strict mode this is rejected.
double chi(const ExtendedPoint& z, const SpectralParam& sp, bool strict = true);

// (a z + b)/(c z + d) for real coefficients with ad - bc > 0, acting on the
// closed half-plane with boundary and infinity handled by chart arithmetic.
ExtendedPoint mobius_apply(double a, double b, double c, double d, const ExtendedPoint& z);

namespace detail {

// Hot-path kernels on raw complex values (interior points, z_lambda given).
inline double cd_raw(Complex z, Complex zl) { return std::norm(z - zl) / z.imag(); }
inline double chi_raw(Complex z, Complex zl) { return z.imag() / std::norm(z - zl); }

inline Complex phi_raw(Complex z1, Complex z2, double q1, double q2, Complex lam) {
    const Complex s1 = z1 + lam - q1;
    const Complex s2 = z2 + lam - q2;
    return -1.0 / s1 - 1.0 / s2;
}

inline double mu2_raw(Complex z1, Complex z2, double q1, double q2, Complex lam, Complex zl) {
    const Complex f = phi_raw(z1, z2, q1, q2, lam);
    return 2.0 * cd_raw(f, zl) / (cd_raw(z1, zl) + cd_raw(z2, zl));
}

} // namespace detail

} // namespace hypermu
