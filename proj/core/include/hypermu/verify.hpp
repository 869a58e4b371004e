#pragma once

#include <functional>
#include <vector>

#include "hypermu/blowup.hpp"
#include "hypermu/report.hpp"
#include "hypermu/rng.hpp"

namespace hypermu {

// Spectral rectangle and sampling box for the verification suites.
struct Region {
    double E = 2.5;
    double eps = 0.5;
    double im_floor = 1e-2; // start of the dyadic near-boundary schedule
    double re_min = -6, re_max = 6;
    double im_min = 1e-3, im_max = 1e3;
    double q_max = 3;

    void validate() const;
};

struct GridSpec {
    // mu2 scan: per-axis counts; the z-axes are replicated in the w-chart.
    std::size_t n_re = 40;
    std::size_t n_im = 40;
    std::size_t n_lambda_re = 11;
    std::vector<double> lambda_ims = {1e-3, 1e-2, 1e-1};
    bool both_charts = true;
    int refinement = 2;

    // mu3 scan: near-boundary grid and dyadic floor schedule.
    std::size_t mu3_n_re = 12;
    std::size_t mu3_n_im = 4;
    std::size_t mu3_n_lambda = 25;
    double im_floor_end = 1e-4;
    std::size_t top_cells = 100;

    // Collect per-cell rows for CSV/JSON emission; capped at kCellDumpCap
    // cells, larger grids keep the summary only.
    bool collect_cells = false;

    void validate() const;
};

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> geomspace(double a, double b, std::size_t n);

struct IdentitySuiteConfig {
    std::uint64_t n = 100000;
    std::uint64_t seed = 42;
    Region region;
    bool exact = false;
    unsigned jobs = 0;
    double threshold = 1e-9;
    unsigned exact_p = 2; // integer exponent used by the exact-mode mu3 check
};

// Randomized (float) or exact (Gaussian-rational) residuals for the algebraic
// identities: the chi(phi) closed form, the mu2* display and ordering, the
// direct/factored two-level identity, both F forms, the nu/Omega relation,
// the pair/composed polar relations, the blow-up compatibility constraint,
// the cd reduction law, and the det(M) factorization.
IdentityReport run_identity_suite(const IdentitySuiteConfig& config);

// Grid supremum of mu2(z1, z2, 0, 0, lambda) over the region, lambda in
// R(E, eps), with local refinement around the argmax and a diagonal slice
// z1 = z2 tabulated per Im(lambda) level.
ScanReport scan_mu2(const Region& region, const GridSpec& grid, unsigned jobs = 0);

// Near-boundary supremum of mu3p over a dyadic im_floor schedule starting at
// region.im_floor and halving until grid.im_floor_end. Tracks the top cells'
// nu spread per level. q_zero = false draws potentials from [-q_max, q_max].
ScanReport scan_mu3(double p, const Region& region, const GridSpec& grid, bool q_zero = true,
                    unsigned jobs = 0, std::uint64_t seed = 1);

struct PathPoint {
    Complex z1, z2;
    double q1 = 0, q2 = 0;
    Complex lambda;
};

// A one-parameter family t -> (z1(t), z2(t), Q(t), lambda(t)) approaching a
// boundary point of K as t -> 0, with the directional data built in.
class PathSpec {
public:
    enum class Kind { Sigma1, Sigma2, Sigma3, Sigma4, Skew, IInfCheck, Custom };

    static PathSpec sigma1(double x, double lambda0, bool at_infinity = false);
    static PathSpec sigma2(double x, double lambda0);
    static PathSpec sigma3(double x, double lambda0);
    // alpha > 0 approaches along the polar split r2 = t alpha1, Im(lambda) =
    // t alpha2 with (alpha1, alpha2) = (sqrt(1-alpha^2), alpha); alpha = 0
    // keeps Im(lambda) one order below r2.
    static PathSpec sigma4(double psi, double lambda0, double alpha = 0.0);
    static PathSpec skew(double a, double b, double x, double lambda0);
    static PathSpec iinf_check(double psi, double lambda0, double alpha = 0.0);
    static PathSpec custom(std::string name, std::function<PathPoint(double)> fn,
                           bool tracks_phi = false);

    PathPoint at(double t) const { return fn_(t); }
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool tracks_phi() const { return tracks_phi_; }

private:
    PathSpec(Kind k, std::string name, std::function<PathPoint(double)> fn, bool tracks_phi)
        : kind_(k), name_(std::move(name)), fn_(std::move(fn)), tracks_phi_(tracks_phi) {}
    Kind kind_;
    std::string name_;
    std::function<PathPoint(double)> fn_;
    bool tracks_phi_;
};

// Approach path realizing the limsup direction of a K0 boundary point.
PathSpec path_to_boundary(const KPoint& k);

// Extrapolated limit of mu2 (or of the chart size of phi for iinf paths)
// along t = 2^-k, k in [k_min, k_max], Richardson/Neville on the last eight
// usable terms.
LimitReport limit_along_path(const PathSpec& path, int k_min = 1, int k_max = 40);

// Monte Carlo envelope for cd(phi(z_s1, phi(z_s2, z_s3, ...), ...)) over
// (cd1 + cd2 + cd3)(1 + sum q_i^2), sampled outside the compact core
// (sum cd >= c_k) with |q| up to q_max.
EnvelopeReport growth_envelope(double p, const Region& region, std::uint64_t n,
                               std::uint64_t seed, double q_max = 1e3, double c_k = 1.0,
                               unsigned jobs = 0);

// Randomized midpoint-convexity and isometry-invariance residuals for c(w, z).
ProbeReport convexity_isometry_probe(std::uint64_t n, std::uint64_t seed);

} // namespace hypermu
