#include <benchmark/benchmark.h>

#include "hypermu/treesim.hpp"
#include "hypermu/verify.hpp"

namespace {

using namespace hypermu;

void BM_scan_mu2_small(benchmark::State& state) {
    Region rg;
    GridSpec grid;
    grid.n_re = static_cast<std::size_t>(state.range(0));
    grid.n_im = grid.n_re;
    grid.n_lambda_re = 5;
    grid.lambda_ims = {1e-2};
    grid.refinement = 0;
    for (auto _ : state) benchmark::DoNotOptimize(scan_mu2(rg, grid, 0));
    const std::size_t np = 2 * grid.n_re * grid.n_im;
    state.SetItemsProcessed(state.iterations() * (np * np * 5 + np * 5));
}
BENCHMARK(BM_scan_mu2_small)->Arg(8)->Arg(16);

void BM_identity_suite(benchmark::State& state) {
    IdentitySuiteConfig cfg;
    cfg.n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_identity_suite(cfg));
    state.SetItemsProcessed(state.iterations() * cfg.n * 9);
}
BENCHMARK(BM_identity_suite)->Arg(1000)->Arg(10000);

void BM_simulation_generation(benchmark::State& state) {
    SimConfig cfg;
    cfg.population = static_cast<std::size_t>(state.range(0));
    cfg.generations = 16;
    cfg.E = 0.5;
    cfg.eta = 0.05;
    cfg.delta = 0.2;
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
    state.SetItemsProcessed(state.iterations() * cfg.population * cfg.generations);
}
BENCHMARK(BM_simulation_generation)->Arg(1000)->Arg(10000);

} // namespace
