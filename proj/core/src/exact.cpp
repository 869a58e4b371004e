#include "hypermu/exact.hpp"

namespace hypermu::exact {

namespace {

BigRat im_lambda_plus(const GRat& z) { return z.im; } // Im(z + lambda), lambda real

GRat s_of(const GRat& z, const BigRat& q, const RationalSpectral& sp) {
    return z + GRat(sp.lambda - q);
}

} // namespace

std::optional<RationalSpectral> rational_spectral(const BigRat& t) {
    const BigRat den = t * t + 1;
    const BigRat a = (t * t - 2 * t - 1) / den;
    const BigRat b = (1 - 2 * t - t * t) / den;
    if (b <= 0) return std::nullopt;
    RationalSpectral sp;
    sp.z_lambda = GRat(a, b);
    sp.lambda = -2 * a;
    return sp;
}

BigRat random_rational(const CounterRng& rng, std::uint64_t index, std::uint64_t slot,
                       int max_abs, int max_den) {
    const auto den = static_cast<long>(rng.below(index, slot * 2 + 1, max_den)) + 1;
    const long span = 2 * max_abs * den + 1;
    const long num = static_cast<long>(rng.below(index, slot * 2 + 2,
                                                 static_cast<std::uint32_t>(span))) -
                     max_abs * den;
    return BigRat(num, den);
}

ExactSample draw_exact_sample(const CounterRng& rng, std::uint64_t index) {
    ExactSample s;
    // Slope in (-1 - sqrt(2), -1 + sqrt(2)) keeps the fixed point interior.
    for (std::uint64_t attempt = 0;; ++attempt) {
        const BigRat t = random_rational(rng, index, 100 + attempt, 2, 9);
        if (auto sp = rational_spectral(t); sp && sp->z_lambda.im > BigRat(1, 100)) {
            s.sp = *sp;
            break;
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (std::uint64_t attempt = 0;; attempt += 40) {
            BigRat re = random_rational(rng, index, 10 + i + attempt, 6, 8);
            BigRat im = random_rational(rng, index, 20 + i + attempt, 3, 8);
            if (im <= 0) im = 1 - im; // fold onto Im > 0
            s.z[i] = GRat(re, im);
            if (!(s.z[i] - s.sp.z_lambda).is_zero()) break; // excluded point
        }
    }
    for (int i = 0; i < 4; ++i) s.q[i] = random_rational(rng, index, 30 + i, 3, 8);
    return s;
}

BigRat chi_q(const GRat& z, const RationalSpectral& sp) {
    return z.im / (z - sp.z_lambda).norm();
}

BigRat cd_q(const GRat& z, const RationalSpectral& sp) {
    return (z - sp.z_lambda).norm() / z.im;
}

GRat phi_q(const GRat& z1, const GRat& z2, const BigRat& q1, const BigRat& q2,
           const RationalSpectral& sp) {
    const GRat one(1);
    return -(one / s_of(z1, q1, sp)) - (one / s_of(z2, q2, sp));
}

BigRat mu2_q(const GRat& z1, const GRat& z2, const BigRat& q1, const BigRat& q2,
             const RationalSpectral& sp) {
    return 2 * cd_q(phi_q(z1, z2, q1, q2, sp), sp) / (cd_q(z1, sp) + cd_q(z2, sp));
}

bool check_chi_phi_closed(const ExactSample& s) {
    const GRat s1 = s_of(s.z[0], s.q[0], s.sp);
    const GRat s2 = s_of(s.z[1], s.q[1], s.sp);
    const BigRat num =
        im_lambda_plus(s.z[0]) * s2.norm() + im_lambda_plus(s.z[1]) * s1.norm();
    const BigRat den = (s1 + s2 + s.sp.z_lambda * s1 * s2).norm();
    if (den == 0) return true; // excluded configuration, nothing to compare
    return chi_q(phi_q(s.z[0], s.z[1], s.q[0], s.q[1], s.sp), s.sp) == num / den;
}

bool check_cd_reduction(const ExactSample& s) {
    const GRat f = phi_q(s.z[0], s.z[1], s.q[0], s.q[1], s.sp);
    const BigRat lhs = cd_q(f, s.sp);
    const BigRat rhs = mu2_q(s.z[0], s.z[1], s.q[0], s.q[1], s.sp) *
                       (cd_q(s.z[0], s.sp) + cd_q(s.z[1], s.sp)) / 2;
    return lhs == rhs;
}

bool check_mu2_star_equality(const ExactSample& s) {
    const GRat s1 = s_of(s.z[0], s.q[0], s.sp);
    const GRat s2 = s_of(s.z[1], s.q[1], s.sp);
    const BigRat chi1 = chi_q(s.z[0], s.sp);
    const BigRat chi2 = chi_q(s.z[1], s.sp);
    const BigRat num = 2 * chi1 * chi2 * (s1 + s2 + s.sp.z_lambda * s1 * s2).norm();
    const BigRat den =
        (s.z[0].im * s2.norm() + s.z[1].im * s1.norm()) * (chi1 + chi2);
    if (den == 0) return true;
    return mu2_q(s.z[0], s.z[1], s.q[0], s.q[1], s.sp) == num / den;
}

bool check_mu3_direct_factored(const ExactSample& s, unsigned p) {
    static constexpr int kPerm[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    auto pow_q = [](BigRat base, unsigned e) {
        BigRat out(1);
        while (e--) out *= base;
        return out;
    };
    BigRat cd0 = cd_q(s.z[0], s.sp), cd1 = cd_q(s.z[1], s.sp), cd2 = cd_q(s.z[2], s.sp);
    const BigRat csum = cd0 + cd1 + cd2;
    if (csum == 0) return true;
    const std::array<BigRat, 3> cds{cd0, cd1, cd2};
    const std::array<BigRat, 3> nu{cd0 / csum, cd1 / csum, cd2 / csum};

    BigRat direct_num(0), fact_num(0), cd_pow_sum(0), nu_pow_sum(0);
    for (const BigRat& c : cds) cd_pow_sum += pow_q(c, p);
    for (const BigRat& n : nu) nu_pow_sum += pow_q(n, p);
    for (const auto& idx : kPerm) {
        const GRat inner = phi_q(s.z[idx[1]], s.z[idx[2]], s.q[idx[1]], s.q[idx[2]], s.sp);
        if (inner.im <= 0) return true; // pole side cases are out of scope here
        const GRat outer = phi_q(s.z[idx[0]], inner, s.q[idx[0]], s.q[3], s.sp);
        if (outer.im <= 0) return true;
        direct_num += pow_q(cd_q(outer, s.sp), p);

        const BigRat mu_in = mu2_q(s.z[idx[1]], s.z[idx[2]], s.q[idx[1]], s.q[idx[2]], s.sp);
        const BigRat mu_out =
            2 * cd_q(outer, s.sp) / (cd_q(s.z[idx[0]], s.sp) + cd_q(inner, s.sp));
        const BigRat term = mu_out * (nu[idx[0]] / 2 + mu_in * (nu[idx[1]] + nu[idx[2]]) / 4);
        fact_num += pow_q(term, p);
    }
    return direct_num / cd_pow_sum == fact_num / nu_pow_sum;
}

bool check_f_forms(const ExactSample& s) {
    // First form squared times denominators equals the omega form squared:
    //   chi(phi)^2 mu2^2 (r1^2 + 2 chi1 chi2) == 4 chi1^2 chi2^2,
    // which is the two displayed forms compared after clearing r1 = sqrt(.).
    const BigRat chi1 = chi_q(s.z[0], s.sp);
    const BigRat chi2 = chi_q(s.z[1], s.sp);
    const BigRat r1sq = chi1 * chi1 + chi2 * chi2;
    if (r1sq == 0) return true;
    const GRat f = phi_q(s.z[0], s.z[1], s.q[0], s.q[1], s.sp);
    if ((f - s.sp.z_lambda).is_zero()) return true; // chi pole, excluded
    const BigRat chif = chi_q(f, s.sp);
    const BigRat m = mu2_q(s.z[0], s.z[1], s.q[0], s.q[1], s.sp);
    return chif * chif * m * m * (r1sq + 2 * chi1 * chi2) == 4 * chi1 * chi1 * chi2 * chi2;
}

bool check_nu_omega(const ExactSample& s) {
    static constexpr int kPerm[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    const std::array<BigRat, 3> chi{chi_q(s.z[0], s.sp), chi_q(s.z[1], s.sp),
                                    chi_q(s.z[2], s.sp)};
    const std::array<BigRat, 3> cd{cd_q(s.z[0], s.sp), cd_q(s.z[1], s.sp), cd_q(s.z[2], s.sp)};
    const BigRat csum = cd[0] + cd[1] + cd[2];
    const BigRat cross = chi[0] * chi[1] + chi[0] * chi[2] + chi[1] * chi[2];
    if (csum == 0 || cross == 0) return true;
    for (const auto& idx : kPerm) {
        // Omega_{s2} Omega_{s3} / (sum of products) with the common radius cleared.
        const BigRat lhs = cd[idx[0]] / csum;
        const BigRat rhs = chi[idx[1]] * chi[idx[2]] / cross;
        if (lhs != rhs) return false;
    }
    return true;
}

bool check_omega_relations(const ExactSample& s) {
    static constexpr int kPerm[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    const std::array<BigRat, 3> chi{chi_q(s.z[0], s.sp), chi_q(s.z[1], s.sp),
                                    chi_q(s.z[2], s.sp)};
    const BigRat r_sq = chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2];
    if (r_sq == 0) return true;
    for (const auto& idx : kPerm) {
        const BigRat o1 = chi[idx[0]] * chi[idx[0]] / r_sq;
        const BigRat o2 = chi[idx[1]] * chi[idx[1]] / r_sq;
        const BigRat o3 = chi[idx[2]] * chi[idx[2]] / r_sq;
        const BigRat pair = chi[idx[1]] * chi[idx[1]] + chi[idx[2]] * chi[idx[2]];
        if (pair == 0) return true;
        // Pair polar relations, squared.
        if (o2 != (o2 + o3) * (chi[idx[1]] * chi[idx[1]] / pair)) return false;
        if (o3 != (o2 + o3) * (chi[idx[2]] * chi[idx[2]] / pair)) return false;
        // Composed relations with F^2 = chi(phi)^2 / r1(pair)^2.
        const GRat inner = phi_q(s.z[idx[1]], s.z[idx[2]], s.q[idx[1]], s.q[idx[2]], s.sp);
        if (inner.im <= 0) return true;
        if ((inner - s.sp.z_lambda).is_zero()) return true; // chi pole, excluded
        const BigRat chif = chi_q(inner, s.sp);
        const BigRat f_sq = chif * chif / pair;
        const BigRat comp = o1 + f_sq * (o2 + o3);
        const BigRat chi_a = chi_q(s.z[idx[0]], s.sp);
        const BigRat comp_pair = chi_a * chi_a + chif * chif;
        if (comp_pair == 0) return true;
        if (o1 != comp * (chi_a * chi_a / comp_pair)) return false;
        if (f_sq * (o2 + o3) != comp * (chif * chif / comp_pair)) return false;
    }
    return true;
}

bool check_compat(const ExactSample& s) {
    // Cross-multiplied form with the positive radii r1 r2 cleared:
    //   Im(z1) chi2 |z2 - z_lambda|^2 == Im(z2) chi1 |z1 - z_lambda|^2.
    const BigRat lhs = s.z[0].im * chi_q(s.z[1], s.sp) * (s.z[1] - s.sp.z_lambda).norm();
    const BigRat rhs = s.z[1].im * chi_q(s.z[0], s.sp) * (s.z[0] - s.sp.z_lambda).norm();
    return lhs == rhs;
}

bool check_det_m_value(const BigRat& s1, const BigRat& s2, const BigRat& lambda) {
    const BigRat m11 = (s1 * s1 - lambda * s1 + 2) * s2 * s2;
    const BigRat m22 = (s2 * s2 - lambda * s2 + 2) * s1 * s1;
    const BigRat m12 = -s1 * s2 * (s1 * s2 - lambda * (s1 + s2) / 2 + 2);
    const BigRat det = m11 * m22 - m12 * m12;
    const BigRat d = s1 - s2;
    return det == s1 * s1 * s2 * s2 * d * d * (2 - lambda * lambda / 4);
}

Poly3 Poly3::var(int which) {
    Poly3 p;
    std::array<int, 3> e{0, 0, 0};
    e[which] = 1;
    p.coeff[e] = 1;
    return p;
}

Poly3 Poly3::constant(const BigRat& c) {
    Poly3 p;
    if (c != 0) p.coeff[{0, 0, 0}] = c;
    return p;
}

bool Poly3::is_zero() const {
    for (const auto& [e, c] : coeff)
        if (c != 0) return false;
    return true;
}

Poly3 operator+(const Poly3& a, const Poly3& b) {
    Poly3 out = a;
    for (const auto& [e, c] : b.coeff) {
        auto& slot = out.coeff[e];
        slot += c;
        if (slot == 0) out.coeff.erase(e);
    }
    return out;
}

Poly3 operator-(const Poly3& a, const Poly3& b) {
    return a + (b * Poly3::constant(BigRat(-1)));
}

Poly3 operator*(const Poly3& a, const Poly3& b) {
    Poly3 out;
    for (const auto& [ea, ca] : a.coeff)
        for (const auto& [eb, cb] : b.coeff) {
            const std::array<int, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            auto& slot = out.coeff[e];
            slot += ca * cb;
            if (slot == 0) out.coeff.erase(e);
        }
    return out;
}

Poly3 det_m_identity_poly() {
    const Poly3 s1 = Poly3::var(0);
    const Poly3 s2 = Poly3::var(1);
    const Poly3 lam = Poly3::var(2);
    const Poly3 two = Poly3::constant(2);
    const Poly3 half = Poly3::constant(BigRat(1, 2));
    const Poly3 quarter = Poly3::constant(BigRat(1, 4));

    const Poly3 m11 = (s1 * s1 - lam * s1 + two) * s2 * s2;
    const Poly3 m22 = (s2 * s2 - lam * s2 + two) * s1 * s1;
    const Poly3 m12 =
        Poly3::constant(BigRat(-1)) * s1 * s2 * (s1 * s2 - lam * (s1 + s2) * half + two);
    const Poly3 det = m11 * m22 - m12 * m12;

    const Poly3 diff = s1 - s2;
    const Poly3 factored = s1 * s1 * s2 * s2 * diff * diff * (two - lam * lam * quarter);
    return det - factored;
}

} // namespace hypermu::exact
