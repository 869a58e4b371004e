#pragma once

#include <array>

#include "hypermu/halfplane.hpp"

namespace hypermu {

struct SiteTriple {
    ExtendedPoint z1, z2, z3;
    const ExtendedPoint& operator[](int i) const { return i == 0 ? z1 : (i == 1 ? z2 : z3); }
};

struct PotentialQuad {
    double q1 = 0, q2 = 0, q3 = 0, q4 = 0;
    double operator[](int i) const {
        switch (i) {
        case 0: return q1;
        case 1: return q2;
        case 2: return q3;
        default: return q4;
        }
    }
};

// The three cyclic permutations of (1, 2, 3); the table is 0-based.
enum class CyclicPerm { c123, c231, c312 };
inline constexpr std::array<CyclicPerm, 3> kCyclicPerms{CyclicPerm::c123, CyclicPerm::c231,
                                                        CyclicPerm::c312};
inline constexpr std::array<int, 3> perm_indices(CyclicPerm s) {
    switch (s) {
    case CyclicPerm::c123: return {0, 1, 2};
    case CyclicPerm::c231: return {1, 2, 0};
    default: return {2, 0, 1};
    }
}

// The two-child recursion map phi = -1/s1 - 1/s2 with s_i = z_i + lambda - q_i.
// A single pole (s_i = 0, the other nonzero) maps to the point at infinity;
// both s_i = 0 is an indeterminate 0/0 configuration.
ExtendedPoint phi(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                  const SpectralParam& sp);

// p_i = 1 + Im(lambda)/Im(z_i), at least 1 for Im(lambda) >= 0.
double p_factor(const ExtendedPoint& z, const SpectralParam& sp);

// One-step contraction factor mu2 = 2 cd(phi) / (cd(z1) + cd(z2)).
double mu2(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
           const SpectralParam& sp);

// mu2 with both p-factors replaced by 1; an upper bound for mu2 when
// Im(lambda) >= 0, equal to mu2 on the real axis.
double mu2_star(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                const SpectralParam& sp);

// Closed form of chi(phi(z1, z2, q1, q2, lambda)):
//   [Im(z1+lambda)|s2|^2 + Im(z2+lambda)|s1|^2] / |s1 + s2 + z_lambda s1 s2|^2.
// Accepts real-boundary inputs, where Im(z_i + lambda) = Im(lambda).
double chi_phi_closed(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                      const SpectralParam& sp);

// Convexity weights nu_i = cd(z_i) / (cd(z1) + cd(z2) + cd(z3)).
std::array<double, 3> nu(const SiteTriple& z, const SpectralParam& sp);

// Two-level contraction factor, direct form: sum over the cyclic permutations
// of cd^p of the composed map, over cd^p(z1) + cd^p(z2) + cd^p(z3). The outer
// potential is always q4. A pole of an inner or outer map yields +infinity.
double mu3p_direct(const SiteTriple& z, const PotentialQuad& q, const SpectralParam& sp, double p);

// The same function assembled from mu2 and nu; identical wherever defined.
double mu3p_factored(const SiteTriple& z, const PotentialQuad& q, const SpectralParam& sp,
                     double p);

// F = chi(phi(z1, z2, q1, q2, lambda)) / r1(z1, z2).
double f_ratio(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
               const SpectralParam& sp);

// Second form of the same quantity, 2 w1 w2 / (mu2 (w1 + w2)); singular when mu2 = 0.
double f_ratio_mu2(const ExtendedPoint& z1, const ExtendedPoint& z2, double q1, double q2,
                   const SpectralParam& sp);

} // namespace hypermu
