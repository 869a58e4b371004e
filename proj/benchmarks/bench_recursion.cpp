#include <benchmark/benchmark.h>

#include "hypermu/recursion.hpp"
#include "hypermu/rng.hpp"

namespace {

using namespace hypermu;

const SpectralParam kSp{Complex(0.5, 0.1)};

std::vector<Complex> sample_points(std::size_t n, std::uint64_t seed) {
    const CounterRng rng(seed);
    std::vector<Complex> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pts.emplace_back(rng.uniform(i, 0, -5, 5), rng.log_uniform(i, 1, 1e-3, 1e3));
    return pts;
}

void BM_phi_raw(benchmark::State& state) {
    const auto pts = sample_points(1024, 1);
    const Complex lam = kSp.lambda();
    std::size_t i = 0;
    for (auto _ : state) {
        const Complex v = detail::phi_raw(pts[i & 1023], pts[(i + 7) & 1023], 0.3, -0.2, lam);
        benchmark::DoNotOptimize(v);
        ++i;
    }
}
BENCHMARK(BM_phi_raw);

void BM_mu2_raw(benchmark::State& state) {
    const auto pts = sample_points(1024, 2);
    const Complex lam = kSp.lambda();
    const Complex zl = kSp.fixed_point_value();
    std::size_t i = 0;
    for (auto _ : state) {
        const double v = detail::mu2_raw(pts[i & 1023], pts[(i + 13) & 1023], 0.3, -0.2, lam, zl);
        benchmark::DoNotOptimize(v);
        ++i;
    }
}
BENCHMARK(BM_mu2_raw);

void BM_mu2_checked(benchmark::State& state) {
    const auto pts = sample_points(1024, 3);
    std::vector<ExtendedPoint> eps;
    eps.reserve(pts.size());
    for (Complex z : pts) eps.push_back(ExtendedPoint::interior(z));
    std::size_t i = 0;
    for (auto _ : state) {
        const double v = mu2(eps[i & 1023], eps[(i + 13) & 1023], 0.3, -0.2, kSp);
        benchmark::DoNotOptimize(v);
        ++i;
    }
}
BENCHMARK(BM_mu2_checked);

void BM_mu3p_direct(benchmark::State& state) {
    const auto pts = sample_points(1024, 4);
    std::vector<ExtendedPoint> eps;
    eps.reserve(pts.size());
    for (Complex z : pts) eps.push_back(ExtendedPoint::interior(z));
    const PotentialQuad q{0.3, -0.2, 0.7, 0.1};
    std::size_t i = 0;
    for (auto _ : state) {
        const SiteTriple z{eps[i & 1023], eps[(i + 5) & 1023], eps[(i + 11) & 1023]};
        benchmark::DoNotOptimize(mu3p_direct(z, q, kSp, 2.0));
        ++i;
    }
}
BENCHMARK(BM_mu3p_direct);

void BM_mu3p_factored(benchmark::State& state) {
    const auto pts = sample_points(1024, 4);
    std::vector<ExtendedPoint> eps;
    eps.reserve(pts.size());
    for (Complex z : pts) eps.push_back(ExtendedPoint::interior(z));
    const PotentialQuad q{0.3, -0.2, 0.7, 0.1};
    std::size_t i = 0;
    for (auto _ : state) {
        const SiteTriple z{eps[i & 1023], eps[(i + 5) & 1023], eps[(i + 11) & 1023]};
        benchmark::DoNotOptimize(mu3p_factored(z, q, kSp, 2.0));
        ++i;
    }
}
BENCHMARK(BM_mu3p_factored);

void BM_fixed_point(benchmark::State& state) {
    const CounterRng rng(5);
    std::size_t i = 0;
    for (auto _ : state) {
        const Complex lam(rng.uniform(i & 1023, 0, -2.5, 2.5), 0.1);
        benchmark::DoNotOptimize(fixed_point_value(lam));
        ++i;
    }
}
BENCHMARK(BM_fixed_point);

} // namespace
