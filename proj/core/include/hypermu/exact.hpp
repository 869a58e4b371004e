#pragma once

#include <array>
#include <map>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypermu/rng.hpp"

namespace hypermu::exact {

using BigRat = boost::multiprecision::cpp_rational;

// Gaussian rational a + bi.
struct GRat {
    BigRat re, im;

    GRat() = default;
    GRat(BigRat r) : re(std::move(r)) {}
    GRat(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}
    GRat(long r, long i = 0) : re(r), im(i) {}

    GRat conj() const { return {re, -im}; }
    BigRat norm() const { return re * re + im * im; } // |.|^2
    bool is_zero() const { return re == 0 && im == 0; }

    friend GRat operator+(const GRat& a, const GRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GRat operator-(const GRat& a, const GRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GRat operator-(const GRat& a) { return {-a.re, -a.im}; }
    friend GRat operator*(const GRat& a, const GRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GRat operator/(const GRat& a, const GRat& b) {
        const BigRat n = b.norm();
        const GRat c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }
};

// Real rational lambda with a Gaussian-rational fixed point on |z|^2 = 2.
// Rational points of the circle through (1, 1): for slope t,
//   a = (t^2 - 2t - 1)/(t^2 + 1),  b = (1 - 2t - t^2)/(t^2 + 1),
// and z^2 + lambda z + 2 = 0 forces lambda = -2a.
struct RationalSpectral {
    BigRat lambda;
    GRat z_lambda;
};

// Returns the spectral data for slope t, or nullopt when b <= 0.
std::optional<RationalSpectral> rational_spectral(const BigRat& t);

// Deterministic small rational in [-max_abs, max_abs] with denominator <= max_den.
BigRat random_rational(const CounterRng& rng, std::uint64_t index, std::uint64_t slot,
                       int max_abs, int max_den);

// One exact sample: interior Gaussian-rational sites, rational potentials, and
// band-interior rational spectral data.
struct ExactSample {
    std::array<GRat, 3> z;
    std::array<BigRat, 4> q;
    RationalSpectral sp;
};
ExactSample draw_exact_sample(const CounterRng& rng, std::uint64_t index);

// Building blocks over the rationals.
BigRat chi_q(const GRat& z, const RationalSpectral& sp);
BigRat cd_q(const GRat& z, const RationalSpectral& sp);
GRat phi_q(const GRat& z1, const GRat& z2, const BigRat& q1, const BigRat& q2,
           const RationalSpectral& sp);
BigRat mu2_q(const GRat& z1, const GRat& z2, const BigRat& q1, const BigRat& q2,
             const RationalSpectral& sp);

// Exact identity checks; each returns true when the identity holds exactly.
bool check_chi_phi_closed(const ExactSample& s);
bool check_cd_reduction(const ExactSample& s);
bool check_mu2_star_equality(const ExactSample& s); // mu2 == mu2* at real lambda
bool check_mu3_direct_factored(const ExactSample& s, unsigned p);
bool check_f_forms(const ExactSample& s);   // squared forms of the F identity
bool check_nu_omega(const ExactSample& s);  // nu through the triple polar squares
bool check_omega_relations(const ExactSample& s);
bool check_compat(const ExactSample& s);
bool check_det_m_value(const BigRat& s1, const BigRat& s2, const BigRat& lambda);

// Dense trivariate polynomial in (s1, s2, lambda) over the rationals.
struct Poly3 {
    std::map<std::array<int, 3>, BigRat> coeff;

    static Poly3 var(int which);
    static Poly3 constant(const BigRat& c);
    bool is_zero() const;

    friend Poly3 operator+(const Poly3& a, const Poly3& b);
    friend Poly3 operator-(const Poly3& a, const Poly3& b);
    friend Poly3 operator*(const Poly3& a, const Poly3& b);
};

// det(M) - factored form, expanded symbolically; zero iff the factorization
// is a polynomial identity.
Poly3 det_m_identity_poly();

} // namespace hypermu::exact
