#include "hypermu/treesim.hpp"

#include <algorithm>
#include <cmath>

#include "hypermu/parallel.hpp"
#include "hypermu/rng.hpp"

namespace hypermu {

void SimConfig::validate() const {
    if (population < 2) throw DomainError("simulation needs at least two sites");
    if (!(eta > 0)) throw DomainError("simulation requires Im(lambda) > 0");
    if (eta_end != 0.0 && (!(eta_end > 0) || eta_end > eta))
        throw DomainError("eta schedule must decrease toward a positive value");
    if (!(p > 1)) throw DomainError("moment exponent must exceed 1");
    if (!(delta >= 0)) throw DomainError("potential half-width must be nonnegative");
    if (!(initial.imag() > 0)) throw DomainError("initial point must be interior");
}

Complex SimConfig::lambda_at(std::size_t g, std::size_t total) const {
    if (eta_end == 0.0 || total <= 1) return {E, eta};
    const double frac = static_cast<double>(g) / static_cast<double>(total - 1);
    return {E, eta * std::pow(eta_end / eta, frac)};
}

namespace {

double draw_potential(const CounterRng& rng, std::uint64_t index, std::uint64_t slot,
                      double delta, PotentialLaw law) {
    if (delta == 0.0) return 0.0;
    if (law == PotentialLaw::Bernoulli) return rng.sign(index, slot) * delta;
    return rng.uniform(index, slot, -delta, delta);
}

// Parent index stream for one generation: two seeded Fisher-Yates
// permutations back to back, adjacent entries paired per offspring.
std::vector<std::uint32_t> parent_stream(const CounterRng& rng, std::uint64_t generation,
                                         std::size_t n) {
    std::vector<std::uint32_t> stream(2 * n);
    for (std::size_t half = 0; half < 2; ++half) {
        auto* perm = stream.data() + half * n;
        for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::uint32_t j =
                rng.below(generation * 2 + half, i, static_cast<std::uint32_t>(i + 1));
            std::swap(perm[i], perm[j]);
        }
    }
    // An offspring may not draw the same parent twice across the seam.
    for (std::size_t k = 0; k < n; ++k) {
        if (stream[2 * k] == stream[2 * k + 1]) {
            const std::size_t swap_with = (2 * k + 2 < 2 * n) ? 2 * k + 2 : 0;
            std::swap(stream[2 * k + 1], stream[swap_with]);
        }
    }
    return stream;
}

struct GenStats {
    double sum_cdp = 0;
    double max_cd = 0;
    double sum_dist = 0;
    bool bad = false;
};

GenStats population_stats(const std::vector<Complex>& pts, Complex zl, double p) {
    GenStats s;
    const double im_zl = zl.imag();
    for (const Complex& z : pts) {
        if (!(z.imag() > 0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            s.bad = true;
            return s;
        }
        const double cdv = detail::cd_raw(z, zl);
        if (!std::isfinite(cdv)) {
            s.bad = true;
            return s;
        }
        s.sum_cdp += std::pow(cdv, p);
        s.max_cd = std::max(s.max_cd, cdv);
        const double cv = std::norm(z - zl) / (z.imag() * im_zl);
        s.sum_dist += 2.0 * std::asinh(std::sqrt(cv) / 2.0);
    }
    return s;
}

} // namespace

MomentSeries run(const SimConfig& config) {
    config.validate();
    const CounterRng perm_rng(config.seed, /*stream=*/1);
    const CounterRng pot_rng(config.seed, /*stream=*/2);

    MomentSeries series;
    series.config = config;
    const std::size_t n = config.population;
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<Complex> pts(n, config.initial);
    std::vector<Complex> next(n);

    auto record = [&](const GenStats& s) {
        series.mean_cdp.push_back(s.sum_cdp * inv_n);
        series.max_cd.push_back(s.max_cd);
        series.mean_dist.push_back(s.sum_dist * inv_n);
    };
    record(population_stats(pts, fixed_point_value(config.lambda_at(0, config.generations)),
                            config.p));

    for (std::size_t g = 0; g < config.generations; ++g) {
        const Complex lambda = config.lambda_at(g, config.generations);
        const Complex zl = fixed_point_value(lambda);
        const std::vector<std::uint32_t> stream = parent_stream(perm_rng, g, n);
        parallel_chunks(n, 4096, config.jobs, [&](std::size_t, std::size_t begin,
                                                  std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
                const std::uint64_t edge = g * static_cast<std::uint64_t>(n) + k;
                const Complex za = pts[stream[2 * k]];
                const Complex zb = pts[stream[2 * k + 1]];
                const double qa = draw_potential(pot_rng, edge, 0, config.delta, config.law);
                const double qb = draw_potential(pot_rng, edge, 1, config.delta, config.law);
                next[k] = detail::phi_raw(za, zb, qa, qb, lambda);
            }
        });
        pts.swap(next);
        const GenStats s = population_stats(pts, zl, config.p);
        if (s.bad) {
            series.early_stop = true;
            series.stop_generation = g + 1;
            series.diagnostic = "population reached numerically boundary values";
            return series;
        }
        record(s);
    }
    series.stop_generation = config.generations;
    series.diagnostic = "ok";
    return series;
}

SeriesReport MomentSeries::to_report() const {
    SeriesReport r;
    r.meta = {{"population", static_cast<double>(config.population)},
              {"generations", static_cast<double>(config.generations)},
              {"E", config.E},
              {"eta", config.eta},
              {"eta_end", config.eta_end},
              {"delta", config.delta},
              {"bernoulli", config.law == PotentialLaw::Bernoulli ? 1.0 : 0.0},
              {"p", config.p},
              {"seed", static_cast<double>(config.seed)}};
    r.columns = {"generation", "mean_cdp", "max_cd", "mean_dist"};
    for (std::size_t g = 0; g < mean_cdp.size(); ++g)
        r.rows.push_back({static_cast<double>(g), mean_cdp[g], max_cd[g], mean_dist[g]});
    r.early_stop = early_stop;
    r.diagnostic = diagnostic;
    return r;
}

FixedPointProfile fixed_point_profile(const std::vector<double>& energies,
                                      const std::vector<double>& eta_schedule) {
    for (double eta : eta_schedule)
        if (!(eta > 0)) throw DomainError("fixed_point_profile: eta values must be positive");
    FixedPointProfile prof;
    prof.energies = energies;
    prof.etas = eta_schedule;
    for (double e : energies) {
        std::vector<double> row;
        row.reserve(eta_schedule.size());
        for (double eta : eta_schedule) row.push_back(fixed_point_value(Complex(e, eta)).imag());
        prof.im_z.push_back(std::move(row));
    }
    return prof;
}

SeriesReport FixedPointProfile::to_report() const {
    SeriesReport r;
    r.columns = {"E", "eta", "im_z_lambda"};
    for (std::size_t i = 0; i < energies.size(); ++i)
        for (std::size_t j = 0; j < etas.size(); ++j)
            r.rows.push_back({energies[i], etas[j], im_z[i][j]});
    r.diagnostic = "ok";
    return r;
}

} // namespace hypermu
