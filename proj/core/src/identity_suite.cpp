#include <algorithm>
#include <cmath>

#include "hypermu/exact.hpp"
#include "hypermu/parallel.hpp"
#include "hypermu/verify.hpp"

namespace hypermu {

void Region::validate() const {
    if (!(E > 0 && E < kBandEdge)) throw DomainError("region: E must lie in (0, 2*sqrt(2))");
    if (!(eps > 0)) throw DomainError("region: eps must be positive");
    if (!(im_floor > 0)) throw DomainError("region: im_floor must be positive");
    if (!(re_min < re_max)) throw DomainError("region: empty Re range");
    if (!(im_min > 0 && im_min < im_max)) throw DomainError("region: bad Im range");
    if (!(q_max >= 0)) throw DomainError("region: q_max must be nonnegative");
}

void GridSpec::validate() const {
    if (n_re < 2 || n_im < 2 || n_lambda_re < 2 || mu3_n_re < 2 || mu3_n_im < 2 ||
        mu3_n_lambda < 2)
        throw DomainError("grid: axis counts must be at least 2");
    if (lambda_ims.empty()) throw DomainError("grid: no Im(lambda) levels");
    if (!(im_floor_end > 0)) throw DomainError("grid: im_floor_end must be positive");
    if (top_cells == 0) throw DomainError("grid: top_cells must be positive");
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

std::vector<double> geomspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    const double la = std::log(a), lb = std::log(b);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

namespace {

constexpr std::size_t kChunk = 1 << 13;
constexpr double kGuard = 1e-12; // conditioning guard factor

struct PairSample {
    Complex z1, z2;
    double q1, q2;
    Complex lambda, zl;
};

struct TripleSample {
    Complex z1, z2, z3;
    double q1, q2, q3, q4;
    Complex lambda, zl;
};

Complex draw_z(const CounterRng& rng, std::uint64_t i, std::uint64_t base, const Region& rg) {
    return {rng.uniform(i, base, rg.re_min, rg.re_max),
            rng.log_uniform(i, base + 1, rg.im_min, rg.im_max)};
}

Complex draw_lambda(const CounterRng& rng, std::uint64_t i, std::uint64_t base,
                    const Region& rg) {
    return {rng.uniform(i, base, -rg.E, rg.E), rng.uniform(i, base + 1, 1e-6, rg.eps)};
}

PairSample draw_pair(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    PairSample s;
    s.z1 = draw_z(rng, i, 0, rg);
    s.z2 = draw_z(rng, i, 2, rg);
    s.q1 = rng.uniform(i, 4, -rg.q_max, rg.q_max);
    s.q2 = rng.uniform(i, 5, -rg.q_max, rg.q_max);
    s.lambda = draw_lambda(rng, i, 6, rg);
    s.zl = fixed_point_value(s.lambda);
    return s;
}

TripleSample draw_triple(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    TripleSample s;
    s.z1 = draw_z(rng, i, 0, rg);
    s.z2 = draw_z(rng, i, 2, rg);
    s.z3 = draw_z(rng, i, 4, rg);
    s.q1 = rng.uniform(i, 6, -rg.q_max, rg.q_max);
    s.q2 = rng.uniform(i, 7, -rg.q_max, rg.q_max);
    s.q3 = rng.uniform(i, 8, -rg.q_max, rg.q_max);
    s.q4 = rng.uniform(i, 9, -rg.q_max, rg.q_max);
    s.lambda = draw_lambda(rng, i, 10, rg);
    s.zl = fixed_point_value(s.lambda);
    return s;
}

double rel(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// |s1 + s2 + zl s1 s2|^2 against the scale of its terms.
bool well_conditioned_pair(Complex s1, Complex s2, Complex zl) {
    const double den = std::norm(s1 + s2 + zl * s1 * s2);
    const double scale = std::abs(s1) + std::abs(s2) + std::abs(zl) * std::abs(s1) * std::abs(s2);
    return den > kGuard * scale * scale;
}

// Residual of one identity at sample i; returns negative value for "skipped".
using IdentityFn = double (*)(const CounterRng&, std::uint64_t, const Region&);

double id_chi_phi(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const PairSample s = draw_pair(rng, i, rg);
    const Complex c1 = s.z1 + s.lambda - s.q1;
    const Complex c2 = s.z2 + s.lambda - s.q2;
    if (!well_conditioned_pair(c1, c2, s.zl)) return -1.0;
    const Complex f = detail::phi_raw(s.z1, s.z2, s.q1, s.q2, s.lambda);
    const double direct = detail::chi_raw(f, s.zl);
    const double closed = ((s.z1.imag() + s.lambda.imag()) * std::norm(c2) +
                           (s.z2.imag() + s.lambda.imag()) * std::norm(c1)) /
                          std::norm(c1 + c2 + s.zl * c1 * c2);
    return rel(direct, closed);
}

double id_mu2_star(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const PairSample s = draw_pair(rng, i, rg);
    const Complex c1 = s.z1 + s.lambda - s.q1;
    const Complex c2 = s.z2 + s.lambda - s.q2;
    if (!well_conditioned_pair(c1, c2, s.zl)) return -1.0;
    const double mu = detail::mu2_raw(s.z1, s.z2, s.q1, s.q2, s.lambda, s.zl);
    // p-factor closed form of mu2 itself.
    const double chi1 = detail::chi_raw(s.z1, s.zl);
    const double chi2 = detail::chi_raw(s.z2, s.zl);
    const double d = std::norm(c1 + c2 + s.zl * c1 * c2);
    const double num = 2.0 * chi1 * chi2 * d;
    const double den_mu2 = ((s.z1.imag() + s.lambda.imag()) * std::norm(c2) +
                            (s.z2.imag() + s.lambda.imag()) * std::norm(c1)) *
                           (chi1 + chi2);
    const double den_star =
        (s.z1.imag() * std::norm(c2) + s.z2.imag() * std::norm(c1)) * (chi1 + chi2);
    if (den_mu2 == 0.0 || den_star == 0.0) return -1.0;
    const double closed = num / den_mu2;
    const double star = num / den_star;
    const double ordering = std::max(0.0, mu - star); // mu2 <= mu2* for Im(lambda) >= 0
    return std::max(rel(mu, closed), ordering);
}

double id_mu3(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const TripleSample t = draw_triple(rng, i, rg);
    const Complex zs[3] = {t.z1, t.z2, t.z3};
    const double qs[4] = {t.q1, t.q2, t.q3, t.q4};
    static constexpr int kPerm[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    const double p = 2.0;

    double cd_[3];
    for (int j = 0; j < 3; ++j) cd_[j] = detail::cd_raw(zs[j], t.zl);
    const double csum = cd_[0] + cd_[1] + cd_[2];
    double direct = 0, fact = 0, cdp = 0, nup = 0;
    for (int j = 0; j < 3; ++j) {
        cdp += cd_[j] * cd_[j];
        nup += (cd_[j] / csum) * (cd_[j] / csum);
    }
    for (const auto& idx : kPerm) {
        const Complex sb = zs[idx[1]] + t.lambda - qs[idx[1]];
        const Complex sc = zs[idx[2]] + t.lambda - qs[idx[2]];
        if (!well_conditioned_pair(sb, sc, t.zl)) return -1.0;
        const Complex inner = -1.0 / sb - 1.0 / sc;
        const Complex sa = zs[idx[0]] + t.lambda - qs[idx[0]];
        const Complex sd = inner + t.lambda - qs[3];
        if (!well_conditioned_pair(sa, sd, t.zl)) return -1.0;
        const Complex outer = -1.0 / sa - 1.0 / sd;
        const double cdo = detail::cd_raw(outer, t.zl);
        direct += std::pow(cdo, p);

        const double cdi = detail::cd_raw(inner, t.zl);
        const double mu_in = 2.0 * cdi / (cd_[idx[1]] + cd_[idx[2]]);
        const double mu_out = 2.0 * cdo / (cd_[idx[0]] + cdi);
        const double nu1 = cd_[idx[0]] / csum;
        const double nu23 = (cd_[idx[1]] + cd_[idx[2]]) / csum;
        fact += std::pow(mu_out * (0.5 * nu1 + 0.25 * mu_in * nu23), p);
    }
    return rel(direct / cdp, fact / nup);
}

double id_f_forms(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const PairSample s = draw_pair(rng, i, rg);
    const Complex c1 = s.z1 + s.lambda - s.q1;
    const Complex c2 = s.z2 + s.lambda - s.q2;
    if (!well_conditioned_pair(c1, c2, s.zl)) return -1.0;
    const double chi1 = detail::chi_raw(s.z1, s.zl);
    const double chi2 = detail::chi_raw(s.z2, s.zl);
    const double r1 = std::hypot(chi1, chi2);
    const Complex f = detail::phi_raw(s.z1, s.z2, s.q1, s.q2, s.lambda);
    const double first = detail::chi_raw(f, s.zl) / r1;
    const double mu = detail::mu2_raw(s.z1, s.z2, s.q1, s.q2, s.lambda, s.zl);
    if (mu <= 0.0) return -1.0;
    const double second = 2.0 * (chi1 / r1) * (chi2 / r1) / (mu * (chi1 / r1 + chi2 / r1));
    return rel(first, second);
}

double id_nu_omega(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const TripleSample t = draw_triple(rng, i, rg);
    const Complex zs[3] = {t.z1, t.z2, t.z3};
    static constexpr int kPerm[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    double cd_[3], chi_[3];
    for (int j = 0; j < 3; ++j) {
        cd_[j] = detail::cd_raw(zs[j], t.zl);
        chi_[j] = detail::chi_raw(zs[j], t.zl);
    }
    const double csum = cd_[0] + cd_[1] + cd_[2];
    const double r = std::sqrt(chi_[0] * chi_[0] + chi_[1] * chi_[1] + chi_[2] * chi_[2]);
    const double om[3] = {chi_[0] / r, chi_[1] / r, chi_[2] / r};
    const double cross = om[0] * om[1] + om[0] * om[2] + om[1] * om[2];
    if (cross == 0.0) return -1.0;
    double worst = 0;
    for (const auto& idx : kPerm)
        worst = std::max(worst, rel(cd_[idx[0]] / csum, om[idx[1]] * om[idx[2]] / cross));
    return worst;
}

double id_omega_relations(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const TripleSample t = draw_triple(rng, i, rg);
    const SpectralParam sp(t.lambda, rg.E, rg.eps);
    const SiteTriple z{ExtendedPoint::interior(t.z1), ExtendedPoint::interior(t.z2),
                       ExtendedPoint::interior(t.z3)};
    const PotentialQuad q{t.q1, t.q2, t.q3, t.q4};
    double worst = 0;
    for (CyclicPerm s : kCyclicPerms) {
        const auto res = omega_relations_residual(z, q, sp, s);
        if (!res) return -1.0;
        worst = std::max({worst, res->oo, res->of});
    }
    return worst;
}

double id_compat(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const PairSample s = draw_pair(rng, i, rg);
    const SpectralParam sp(s.lambda, rg.E, rg.eps);
    const KPoint k = KPoint::from_interior(ExtendedPoint::interior(s.z1),
                                           ExtendedPoint::interior(s.z2), s.q1, s.q2, sp);
    return compat_residual(k);
}

double id_cd_reduction(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const PairSample s = draw_pair(rng, i, rg);
    const Complex f = detail::phi_raw(s.z1, s.z2, s.q1, s.q2, s.lambda);
    const double lhs = detail::cd_raw(f, s.zl);
    const double mu = detail::mu2_raw(s.z1, s.z2, s.q1, s.q2, s.lambda, s.zl);
    const double rhs = mu * (detail::cd_raw(s.z1, s.zl) + detail::cd_raw(s.z2, s.zl)) / 2.0;
    return rel(lhs, rhs);
}

double id_det_m(const CounterRng& rng, std::uint64_t i, const Region& rg) {
    const double s1 = rng.uniform(i, 0, -6, 6);
    const double s2 = rng.uniform(i, 1, -6, 6);
    const double lam = rng.uniform(i, 2, -rg.E, rg.E);
    const SymMat2 m = m_matrix_real(s1, s2, lam);
    const double factored = det_m_factored(s1, s2, lam);
    // Scale of the cancelling products, not of the (possibly tiny) result.
    const double scale = std::abs(m.m11 * m.m22) + m.m12 * m.m12 + 1e-30;
    return std::abs(m.det() - factored) / scale;
}

struct NamedIdentity {
    const char* name;
    IdentityFn fn;
};

constexpr NamedIdentity kIdentities[] = {
    {"chi_phi_closed", id_chi_phi},   {"mu2_star", id_mu2_star},
    {"mu3_direct_factored", id_mu3},  {"f_forms", id_f_forms},
    {"nu_omega", id_nu_omega},        {"omega_relations", id_omega_relations},
    {"blowup_compat", id_compat},      {"cd_reduction", id_cd_reduction},
    {"det_m", id_det_m},
};

IdentityReport run_exact_suite(const IdentitySuiteConfig& config) {
    IdentityReport report;
    report.mode = "exact";
    report.n = config.n;
    report.seed = config.seed;
    report.threshold = 0.0;

    struct ExactCheck {
        const char* name;
        bool (*fn)(const exact::ExactSample&, unsigned);
    };
    static const ExactCheck checks[] = {
        {"chi_phi_closed", [](const exact::ExactSample& s, unsigned) {
             return exact::check_chi_phi_closed(s);
         }},
        {"mu2_star", [](const exact::ExactSample& s, unsigned) {
             return exact::check_mu2_star_equality(s);
         }},
        {"mu3_direct_factored", [](const exact::ExactSample& s, unsigned p) {
             return exact::check_mu3_direct_factored(s, p);
         }},
        {"f_forms", [](const exact::ExactSample& s, unsigned) { return exact::check_f_forms(s); }},
        {"nu_omega", [](const exact::ExactSample& s, unsigned) {
             return exact::check_nu_omega(s);
         }},
        {"omega_relations", [](const exact::ExactSample& s, unsigned) {
             return exact::check_omega_relations(s);
         }},
        {"blowup_compat", [](const exact::ExactSample& s, unsigned) {
             return exact::check_compat(s);
         }},
        {"cd_reduction", [](const exact::ExactSample& s, unsigned) {
             return exact::check_cd_reduction(s);
         }},
    };

    const CounterRng rng(config.seed, /*stream=*/777);
    for (const auto& chk : checks) {
        IdentityResult res;
        res.name = chk.name;
        res.samples = config.n;
        for (std::uint64_t i = 0; i < config.n; ++i) {
            const exact::ExactSample s = exact::draw_exact_sample(rng, i);
            if (!chk.fn(s, config.exact_p)) {
                res.max_residual = 1.0;
                res.worst_index = i;
                break;
            }
        }
        report.results.push_back(res);
    }
    // det(M): symbolic polynomial identity plus rational spot values.
    {
        IdentityResult res;
        res.name = "det_m";
        res.samples = config.n;
        if (!exact::det_m_identity_poly().is_zero()) res.max_residual = 1.0;
        for (std::uint64_t i = 0; i < config.n && res.max_residual == 0.0; ++i) {
            const exact::BigRat s1 = exact::random_rational(rng, i, 50, 8, 9);
            const exact::BigRat s2 = exact::random_rational(rng, i, 51, 8, 9);
            const exact::BigRat lam = exact::random_rational(rng, i, 52, 2, 9);
            if (!exact::check_det_m_value(s1, s2, lam)) {
                res.max_residual = 1.0;
                res.worst_index = i;
            }
        }
        report.results.push_back(res);
    }
    report.pass = true;
    for (const auto& r : report.results)
        if (r.max_residual > 0.0) report.pass = false;
    return report;
}

} // namespace

IdentityReport run_identity_suite(const IdentitySuiteConfig& config) {
    config.region.validate();
    if (config.exact) return run_exact_suite(config);

    IdentityReport report;
    report.mode = "float";
    report.n = config.n;
    report.seed = config.seed;
    report.threshold = config.threshold;

    for (std::size_t id = 0; id < std::size(kIdentities); ++id) {
        const CounterRng rng(config.seed, /*stream=*/id);
        const std::size_t n_chunks = (config.n + kChunk - 1) / kChunk;
        struct Partial {
            MaxCell worst;
            std::uint64_t skipped = 0;
        };
        std::vector<Partial> partials(n_chunks);
        parallel_chunks(config.n, kChunk, config.jobs,
                        [&](std::size_t c, std::size_t begin, std::size_t end) {
                            Partial& p = partials[c];
                            for (std::size_t i = begin; i < end; ++i) {
                                const double r = kIdentities[id].fn(rng, i, config.region);
                                if (r < 0.0)
                                    ++p.skipped;
                                else
                                    p.worst.consider(r, i);
                            }
                        });
        IdentityResult res;
        res.name = kIdentities[id].name;
        res.samples = config.n;
        MaxCell worst;
        for (const Partial& p : partials) {
            worst.merge(p.worst);
            res.skipped += p.skipped;
        }
        res.max_residual = std::max(0.0, worst.value);
        res.worst_index = worst.index;
        report.results.push_back(res);
    }
    report.pass = true;
    for (const auto& r : report.results) {
        if (r.max_residual > config.threshold) report.pass = false;
        if (r.samples > 0 && static_cast<double>(r.skipped) > 0.01 * static_cast<double>(r.samples))
            report.pass = false;
    }
    return report;
}

} // namespace hypermu
