#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hypermu/parallel.hpp"
#include "hypermu/verify.hpp"

namespace hypermu {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr int kBins = 24;
constexpr std::size_t kRefineStarts = 64;

struct BinMax {
    double value = 0;
    std::uint64_t count = 0;
};

struct EnvelopeSample {
    Complex z[3];
    double q[4] = {0, 0, 0, 0};
    double lambda = 0;
    Complex zl;
};

struct EnvelopeDomain {
    double e_max;
    double q_max;
    double c_k;
};

// Pure function of (rng, index): half wide coverage, half concentrated near
// the fixed point with one dominant potential, where the envelope peaks.
EnvelopeSample draw_envelope_sample(const CounterRng& rng, std::uint64_t i,
                                    const EnvelopeDomain& dom) {
    EnvelopeSample s;
    s.lambda = rng.uniform(i, 17, -dom.e_max, dom.e_max);
    s.zl = fixed_point_value(Complex(s.lambda, 0.0));
    const bool wide = rng.bits(i, 18) & 1ull;
    for (int j = 0; j < 3; ++j) {
        if (wide) {
            const double re = rng.sign(i, 2 * j) * rng.log_uniform(i, 2 * j + 1, 1e-6, 1e3);
            s.z[j] = Complex(re, rng.log_uniform(i, 6 + j, 1e-6, 1e6));
        } else {
            const double re = s.zl.real() + rng.uniform(i, 2 * j + 1, -2.5, 2.5);
            s.z[j] = Complex(re, rng.log_uniform(i, 6 + j, 2e-2, 4.0));
        }
    }
    if (dom.q_max > 0) {
        for (int j = 0; j < 4; ++j)
            s.q[j] = rng.sign(i, 9 + 2 * j) *
                     rng.log_uniform(i, 10 + 2 * j, wide ? 1e-3 : 1e-2, dom.q_max);
        if (!wide) {
            const int j = static_cast<int>(rng.below(i, 19, 4));
            s.q[j] = rng.sign(i, 20) * rng.log_uniform(i, 21, dom.q_max / 100, dom.q_max);
        }
    }
    return s;
}

// max over the cyclic permutations of cd(phi(z_s1, phi(z_s2, z_s3))) over
// (cd1 + cd2 + cd3)(1 + sum q^2); zero when the sample sits inside the
// compact core or the value is not finite.
double envelope_ratio(const EnvelopeSample& s, const EnvelopeDomain& dom, double* cd_part) {
    const Complex lam(s.lambda, 0.0);
    const double cd1 = detail::cd_raw(s.z[0], s.zl);
    const double cd2 = detail::cd_raw(s.z[1], s.zl);
    const double cd3 = detail::cd_raw(s.z[2], s.zl);
    const double cd_sum = cd1 + cd2 + cd3;
    if (!(cd_sum >= dom.c_k) || !std::isfinite(cd_sum)) return -1.0;
    const double q_sq = s.q[0] * s.q[0] + s.q[1] * s.q[1] + s.q[2] * s.q[2] + s.q[3] * s.q[3];
    static constexpr int kPerm[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    double worst = 0;
    for (const auto& idx : kPerm) {
        const Complex inner =
            detail::phi_raw(s.z[idx[1]], s.z[idx[2]], s.q[idx[1]], s.q[idx[2]], lam);
        const Complex outer = detail::phi_raw(s.z[idx[0]], inner, s.q[idx[0]], s.q[3], lam);
        const double r = detail::cd_raw(outer, s.zl) / cd_sum;
        if (std::isfinite(r)) worst = std::max(worst, r);
    }
    if (cd_part) *cd_part = worst;
    return worst / (1.0 + q_sq);
}

// Deterministic coordinate pattern search inside the sampling box, with
// multiplicative moves and sign flips on the potentials.
double refine_candidate(EnvelopeSample s, const EnvelopeDomain& dom) {
    double f = envelope_ratio(s, dom, nullptr);
    if (f < 0) f = 0;
    double step = 0.5;
    double qstep = 0.5;
    const double log_im_min = std::log(1e-6), log_im_max = std::log(1e6);
    for (int iter = 0; iter < 400; ++iter) {
        bool improved = false;
        auto try_sample = [&](const EnvelopeSample& cand) {
            const double v = envelope_ratio(cand, dom, nullptr);
            if (v > f) {
                f = v;
                s = cand;
                improved = true;
            }
        };
        for (int j = 0; j < 3; ++j) {
            for (double sgn : {1.0, -1.0}) {
                EnvelopeSample cand = s;
                cand.z[j] += Complex(sgn * step, 0);
                try_sample(cand);
                cand = s;
                const double li = std::clamp(std::log(s.z[j].imag()) + sgn * step, log_im_min,
                                             log_im_max);
                cand.z[j] = Complex(s.z[j].real(), std::exp(li));
                try_sample(cand);
            }
        }
        if (dom.q_max > 0) {
            for (int j = 0; j < 4; ++j) {
                for (double mult : {1.0 + qstep, 1.0 / (1.0 + qstep), -1.0}) {
                    EnvelopeSample cand = s;
                    cand.q[j] = std::clamp(s.q[j] * mult, -dom.q_max, dom.q_max);
                    try_sample(cand);
                }
            }
        }
        for (double sgn : {1.0, -1.0}) {
            EnvelopeSample cand = s;
            cand.lambda = std::clamp(s.lambda + sgn * step * 0.4, -dom.e_max, dom.e_max);
            cand.zl = fixed_point_value(Complex(cand.lambda, 0.0));
            try_sample(cand);
        }
        if (!improved) {
            step /= 2;
            qstep /= 2;
            if (step < 1e-8) break;
        }
    }
    return f;
}

} // namespace

EnvelopeReport growth_envelope(double p, const Region& region, std::uint64_t n,
                               std::uint64_t seed, double q_max, double c_k, unsigned jobs) {
    if (!(p > 1.0)) throw std::invalid_argument("growth_envelope requires p > 1");
    region.validate();
    EnvelopeReport report;
    report.p = p;
    report.samples = n;

    const CounterRng rng(seed, /*stream=*/31);
    const EnvelopeDomain dom{region.E, q_max, c_k};
    const double log_bin_hi = std::log10(1.0 + 4.0 * std::max(q_max, 1.0) * q_max) + 1e-9;

    struct Candidate {
        double value;
        std::uint64_t index;
    };
    struct Partial {
        double max_ratio = 0;
        std::uint64_t skipped = 0;
        std::array<Candidate, 4> top{}; // per-chunk candidate starts
        BinMax bins[kBins];
    };
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<Partial> partials(n_chunks);

    parallel_chunks(n, kChunk, jobs, [&](std::size_t c, std::size_t begin, std::size_t end) {
        Partial& part = partials[c];
        for (auto& t : part.top) t = {-1.0, 0};
        for (std::size_t i = begin; i < end; ++i) {
            const EnvelopeSample s = draw_envelope_sample(rng, i, dom);
            double cd_part = 0;
            const double ratio = envelope_ratio(s, dom, &cd_part);
            if (ratio < 0) {
                ++part.skipped;
                continue;
            }
            part.max_ratio = std::max(part.max_ratio, ratio);
            if (ratio > part.top.back().value) {
                part.top.back() = {ratio, i};
                std::sort(part.top.begin(), part.top.end(),
                          [](const Candidate& a, const Candidate& b) {
                              return a.value != b.value ? a.value > b.value : a.index < b.index;
                          });
            }
            const double q_sq =
                s.q[0] * s.q[0] + s.q[1] * s.q[1] + s.q[2] * s.q[2] + s.q[3] * s.q[3];
            int bin = static_cast<int>(std::log10(1.0 + q_sq) / log_bin_hi * kBins);
            bin = std::clamp(bin, 0, kBins - 1);
            if (cd_part > part.bins[bin].value) part.bins[bin].value = cd_part;
            ++part.bins[bin].count;
        }
    });

    BinMax bins[kBins];
    double raw_max = 0;
    std::vector<Candidate> half_cands, full_cands;
    const std::size_t half_chunks = n_chunks / 2;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        const Partial& part = partials[c];
        raw_max = std::max(raw_max, part.max_ratio);
        report.skipped += part.skipped;
        for (const auto& t : part.top)
            if (t.value >= 0) {
                full_cands.push_back(t);
                if (c < half_chunks) half_cands.push_back(t);
            }
        for (int b = 0; b < kBins; ++b) {
            bins[b].count += part.bins[b].count;
            bins[b].value = std::max(bins[b].value, part.bins[b].value);
        }
    }
    auto by_value = [](const Candidate& a, const Candidate& b) {
        return a.value != b.value ? a.value > b.value : a.index < b.index;
    };
    std::sort(half_cands.begin(), half_cands.end(), by_value);
    std::sort(full_cands.begin(), full_cands.end(), by_value);
    if (half_cands.size() > kRefineStarts) half_cands.resize(kRefineStarts);
    if (full_cands.size() > kRefineStarts) full_cands.resize(kRefineStarts);

    // Anytime estimate: the prefix estimate refines the candidates seen in
    // the first half; the full estimate additionally refines the full top
    // set, so it is monotone in the sample count.
    double half_est = 0;
    for (const Candidate& cand : half_cands)
        half_est = std::max(half_est, refine_candidate(draw_envelope_sample(rng, cand.index, dom),
                                                       dom));
    double full_est = half_est;
    for (const Candidate& cand : full_cands)
        full_est = std::max(full_est, refine_candidate(draw_envelope_sample(rng, cand.index, dom),
                                                       dom));

    report.raw_max = raw_max;
    report.max_ratio = full_est;
    report.half_max_ratio = half_est;
    report.doubling_change = half_est > 0 ? (full_est - half_est) / half_est : 0.0;

    // Envelope fit: least squares of per-bin max(cd ratio) against 1 + sum q^2
    // through the origin, bins centered geometrically.
    double num = 0, den = 0;
    for (int b = 0; b < kBins; ++b) {
        if (bins[b].count == 0) continue;
        const double log_center = (b + 0.5) / kBins * log_bin_hi;
        const double x = std::pow(10.0, log_center);
        num += bins[b].value * x;
        den += x * x;
    }
    report.fitted_c = den > 0 ? num / den : 0.0;
    return report;
}

ProbeReport convexity_isometry_probe(std::uint64_t n, std::uint64_t seed) {
    ProbeReport report;
    report.samples = n;
    const CounterRng rng(seed, /*stream=*/77);

    double max_iso = 0, max_conv = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < n; ++i) {
        const Complex w(rng.uniform(i, 0, -5, 5), rng.log_uniform(i, 1, 1e-2, 1e2));
        const Complex z1(rng.uniform(i, 2, -5, 5), rng.log_uniform(i, 3, 1e-2, 1e2));
        const Complex z2(rng.uniform(i, 4, -5, 5), rng.log_uniform(i, 5, 1e-2, 1e2));
        const ExtendedPoint pw = ExtendedPoint::interior(w);
        const ExtendedPoint p1 = ExtendedPoint::interior(z1);
        const ExtendedPoint p2 = ExtendedPoint::interior(z2);

        // Isometry invariance under a random determinant-positive real map.
        double a, b, cc, d, det;
        std::uint64_t slot = 6;
        do {
            a = rng.uniform(i, slot + 0, -3, 3);
            b = rng.uniform(i, slot + 1, -3, 3);
            cc = rng.uniform(i, slot + 2, -3, 3);
            d = rng.uniform(i, slot + 3, -3, 3);
            det = a * d - b * cc;
            slot += 4;
        } while (det <= 0.1);
        const double before = c(p1, p2);
        const double after = c(mobius_apply(a, b, cc, d, p1), mobius_apply(a, b, cc, d, p2));
        const double scale = std::max({before, after, 1e-30});
        max_iso = std::max(max_iso, std::abs(before - after) / scale);

        // Midpoint convexity of z -> c(w, z).
        const ExtendedPoint mid = ExtendedPoint::interior((z1 + z2) / 2.0);
        const double lhs = c(pw, mid);
        const double rhs = (c(pw, p1) + c(pw, p2)) / 2.0;
        const double cscale = std::max({lhs, rhs, 1e-30});
        max_conv = std::max(max_conv, (lhs - rhs) / cscale);
        if (std::abs(z1 - z2) > 0.1 * (std::abs(z1) + std::abs(z2)))
            min_margin = std::min(min_margin, (rhs - lhs) / cscale);
    }
    report.max_isometry_residual = max_iso;
    report.max_convexity_violation = std::max(0.0, max_conv);
    report.min_strictness_margin = n > 0 ? min_margin : 0.0;
    report.pass = report.max_isometry_residual <= 1e-10 &&
                  report.max_convexity_violation <= 1e-12 &&
                  (n == 0 || report.min_strictness_margin > 0);
    return report;
}

} // namespace hypermu
