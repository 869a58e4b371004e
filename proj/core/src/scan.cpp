#include <algorithm>
#include <cmath>

#include "hypermu/parallel.hpp"
#include "hypermu/verify.hpp"

namespace hypermu {

namespace {

constexpr std::size_t kChunk = 1 << 16;

inline double pow_p(double x, double p) {
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    return std::pow(x, p);
}

// z-axis sample points: the (re, im) grid read in the z chart and, when
// enabled, the same grid read in the w chart (z = -1/w).
std::vector<Complex> z_axis_points(const Region& rg, const GridSpec& grid) {
    const auto res = linspace(rg.re_min, rg.re_max, grid.n_re);
    const auto ims = geomspace(rg.im_min, rg.im_max, grid.n_im);
    std::vector<Complex> pts;
    pts.reserve(grid.n_re * grid.n_im * (grid.both_charts ? 2 : 1));
    for (double x : res)
        for (double y : ims) pts.emplace_back(x, y);
    if (grid.both_charts) {
        for (double x : res)
            for (double y : ims) {
                const Complex w(x, y);
                pts.push_back(-1.0 / w);
            }
    }
    return pts;
}

struct LambdaCell {
    Complex lambda;
    Complex zl;
};

std::vector<LambdaCell> lambda_axis(const Region& rg, std::size_t n_re,
                                    const std::vector<double>& ims) {
    std::vector<LambdaCell> cells;
    cells.reserve(n_re * ims.size());
    for (double re : linspace(-rg.E, rg.E, n_re))
        for (double im : ims) {
            const Complex lam(re, im);
            cells.push_back({lam, fixed_point_value(lam)});
        }
    return cells;
}

} // namespace

ScanReport scan_mu2(const Region& region, const GridSpec& grid, unsigned jobs) {
    region.validate();
    grid.validate();
    const std::vector<Complex> pts = z_axis_points(region, grid);
    const std::vector<LambdaCell> lams = lambda_axis(region, grid.n_lambda_re, grid.lambda_ims);
    const std::size_t np = pts.size();
    const std::size_t nl = lams.size();
    const std::size_t total = np * np * nl;
    if (total == 0) throw DomainError("scan_mu2: empty grid");

    const std::size_t n_chunks = (total + kChunk - 1) / kChunk;
    std::vector<MaxCell> partial(n_chunks);
    const bool dump_cells = grid.collect_cells && total <= kCellDumpCap;
    std::vector<double> cell_values(dump_cells ? total : 0);
    parallel_chunks(total, kChunk, jobs, [&](std::size_t c, std::size_t begin, std::size_t end) {
        MaxCell& cell = partial[c];
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t il = idx % nl;
            const std::size_t rest = idx / nl;
            const Complex z1 = pts[rest / np];
            const Complex z2 = pts[rest % np];
            const double v = detail::mu2_raw(z1, z2, 0, 0, lams[il].lambda, lams[il].zl);
            if (dump_cells) cell_values[idx] = v;
            cell.consider(v, idx);
        }
    });
    MaxCell best;
    for (const MaxCell& cell : partial) best.merge(cell);

    ScanReport report;
    report.target = "mu2";
    report.samples = total;
    report.sup = best.value;
    report.margin = 1.0 - best.value;
    report.counterexample = best.value >= 1.0;
    report.axis_names = {"re1", "im1", "re2", "im2", "lambda_re", "lambda_im"};
    const std::size_t il = best.index % nl;
    const Complex bz1 = pts[(best.index / nl) / np];
    const Complex bz2 = pts[(best.index / nl) % np];
    report.argmax = {bz1.real(), bz1.imag(), bz2.real(), bz2.imag(),
                     lams[il].lambda.real(), lams[il].lambda.imag()};

    // Local refinement: shrink a box around the argmax, keeping lambda fixed
    // on its grid cell, and rescan 5 points per axis at each depth.
    double refined = best.value;
    {
        const Complex lam = lams[il].lambda;
        const Complex zl = lams[il].zl;
        double spans[4] = {(region.re_max - region.re_min) / static_cast<double>(grid.n_re - 1),
                           0.5 * bz1.imag(), // log-ish neighborhood for the Im axes
                           (region.re_max - region.re_min) / static_cast<double>(grid.n_re - 1),
                           0.5 * bz2.imag()};
        double center[4] = {bz1.real(), bz1.imag(), bz2.real(), bz2.imag()};
        for (int depth = 0; depth < grid.refinement; ++depth) {
            double best_local = -1.0;
            double best_pt[4] = {center[0], center[1], center[2], center[3]};
            for (int a = -2; a <= 2; ++a)
                for (int b = -2; b <= 2; ++b)
                    for (int c2 = -2; c2 <= 2; ++c2)
                        for (int d = -2; d <= 2; ++d) {
                            const double y1 = center[1] + spans[1] * b / 2.0;
                            const double y2 = center[3] + spans[3] * d / 2.0;
                            if (y1 <= 0 || y2 <= 0) continue;
                            const Complex w1(center[0] + spans[0] * a / 2.0, y1);
                            const Complex w2(center[2] + spans[2] * c2 / 2.0, y2);
                            const double v = detail::mu2_raw(w1, w2, 0, 0, lam, zl);
                            if (v > best_local) {
                                best_local = v;
                                best_pt[0] = w1.real();
                                best_pt[1] = w1.imag();
                                best_pt[2] = w2.real();
                                best_pt[3] = w2.imag();
                            }
                        }
            refined = std::max(refined, best_local);
            for (int k = 0; k < 4; ++k) {
                center[k] = best_pt[k];
                spans[k] /= 2.0;
            }
        }
    }
    report.refined_sup = refined;
    if (refined >= 1.0) report.counterexample = true;

    // Diagonal slice z1 = z2 per Im(lambda) level.
    for (double im : grid.lambda_ims) {
        const std::vector<LambdaCell> slice = lambda_axis(region, grid.n_lambda_re, {im});
        const std::size_t diag_total = pts.size() * slice.size();
        const std::size_t diag_chunks = (diag_total + kChunk - 1) / kChunk;
        std::vector<MaxCell> dpart(diag_chunks);
        parallel_chunks(diag_total, kChunk, jobs,
                        [&](std::size_t c, std::size_t begin, std::size_t end) {
                            MaxCell& cell = dpart[c];
                            for (std::size_t idx = begin; idx < end; ++idx) {
                                const Complex z = pts[idx / slice.size()];
                                const LambdaCell& l = slice[idx % slice.size()];
                                cell.consider(detail::mu2_raw(z, z, 0, 0, l.lambda, l.zl), idx);
                            }
                        });
        MaxCell dbest;
        for (const MaxCell& cell : dpart) dbest.merge(cell);
        report.diag_lambda_im.push_back(im);
        report.diag_sup.push_back(dbest.value);
        report.samples += diag_total;
        if (dbest.value >= 1.0) report.counterexample = true;
    }
    if (dump_cells) {
        report.cells.reserve(total);
        for (std::size_t idx = 0; idx < total; ++idx) {
            const std::size_t il = idx % nl;
            const std::size_t rest = idx / nl;
            const Complex z1 = pts[rest / np];
            const Complex z2 = pts[rest % np];
            report.cells.push_back({z1.real(), z1.imag(), z2.real(), z2.imag(),
                                    lams[il].lambda.real(), lams[il].lambda.imag(),
                                    cell_values[idx]});
        }
    }
    report.sup = std::max(report.sup, refined);
    report.margin = 1.0 - report.sup;
    return report;
}

ScanReport scan_mu3(double p, const Region& region, const GridSpec& grid, bool q_zero,
                    unsigned jobs, std::uint64_t seed) {
    if (!(p > 1.0)) throw std::invalid_argument("scan_mu3 requires p > 1");
    region.validate();
    grid.validate();

    ScanReport report;
    report.target = "mu3";
    report.axis_names = {"re1", "im1", "re2", "im2", "re3", "im3", "lambda_re"};

    const auto res = linspace(region.re_min, region.re_max, grid.mu3_n_re);
    const auto lam_res = linspace(-region.E, region.E, grid.mu3_n_lambda);
    const CounterRng qrng(seed, /*stream=*/9001);

    MaxCell overall;
    std::vector<double> overall_argmax;
    double floor = region.im_floor;
    for (int level = 0;; ++level) {
        const auto ims = geomspace(floor, 2.0 * floor, grid.mu3_n_im);
        const std::size_t nz = res.size() * ims.size();
        std::vector<Complex> zpts;
        zpts.reserve(nz);
        for (double x : res)
            for (double y : ims) zpts.emplace_back(x, y);
        std::vector<LambdaCell> lams;
        lams.reserve(lam_res.size());
        for (double lr : lam_res) {
            const Complex lam(lr, 0.0);
            lams.push_back({lam, fixed_point_value(lam)});
        }
        const std::size_t nl = lams.size();
        const std::size_t total = nz * nz * nz * nl;

        struct TopEntry {
            double value;
            std::size_t index;
        };
        struct Partial {
            MaxCell best;
            std::vector<TopEntry> top;
        };
        const std::size_t n_chunks = (total + kChunk - 1) / kChunk;
        std::vector<Partial> partials(n_chunks);
        const std::size_t keep = grid.top_cells;

        parallel_chunks(total, kChunk, jobs, [&](std::size_t c, std::size_t begin,
                                                 std::size_t end) {
            Partial& part = partials[c];
            part.top.reserve(keep + 1);
            double top_floor = -1.0;
            for (std::size_t idx = begin; idx < end; ++idx) {
                std::size_t rest = idx;
                const std::size_t il = rest % nl;
                rest /= nl;
                const Complex z3 = zpts[rest % nz];
                rest /= nz;
                const Complex z2 = zpts[rest % nz];
                const Complex z1 = zpts[rest / nz];
                const Complex lam = lams[il].lambda;
                const Complex zl = lams[il].zl;
                double q1 = 0, q2 = 0, q3 = 0, q4 = 0;
                if (!q_zero) {
                    q1 = qrng.uniform(idx, 0, -region.q_max, region.q_max);
                    q2 = qrng.uniform(idx, 1, -region.q_max, region.q_max);
                    q3 = qrng.uniform(idx, 2, -region.q_max, region.q_max);
                    q4 = qrng.uniform(idx, 3, -region.q_max, region.q_max);
                }
                const double cd1 = detail::cd_raw(z1, zl);
                const double cd2 = detail::cd_raw(z2, zl);
                const double cd3 = detail::cd_raw(z3, zl);
                const double denom = pow_p(cd1, p) + pow_p(cd2, p) + pow_p(cd3, p);
                const Complex zsv[3] = {z1, z2, z3};
                const double qsv[4] = {q1, q2, q3, q4};
                static constexpr int kPerm[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
                double num = 0;
                for (const auto& pi : kPerm) {
                    const Complex inner = detail::phi_raw(zsv[pi[1]], zsv[pi[2]], qsv[pi[1]],
                                                          qsv[pi[2]], lam);
                    const Complex outer =
                        detail::phi_raw(zsv[pi[0]], inner, qsv[pi[0]], qsv[3], lam);
                    num += pow_p(detail::cd_raw(outer, zl), p);
                }
                const double v = num / denom;
                part.best.consider(v, idx);
                if (v > top_floor || part.top.size() < keep) {
                    part.top.push_back({v, idx});
                    if (part.top.size() > 2 * keep) {
                        std::sort(part.top.begin(), part.top.end(),
                                  [](const TopEntry& a, const TopEntry& b) {
                                      return a.value != b.value ? a.value > b.value
                                                                : a.index < b.index;
                                  });
                        part.top.resize(keep);
                        top_floor = part.top.back().value;
                    }
                }
            }
        });

        MaxCell best;
        std::vector<TopEntry> top;
        for (Partial& part : partials) {
            best.merge(part.best);
            top.insert(top.end(), part.top.begin(), part.top.end());
        }
        std::sort(top.begin(), top.end(), [](const TopEntry& a, const TopEntry& b) {
            return a.value != b.value ? a.value > b.value : a.index < b.index;
        });
        if (top.size() > keep) top.resize(keep);

        // Mean L1 spread of the convexity weights over the top cells.
        double spread_sum = 0;
        for (const TopEntry& e : top) {
            std::size_t rest = e.index;
            const std::size_t il = rest % nl;
            rest /= nl;
            const Complex z3 = zpts[rest % nz];
            rest /= nz;
            const Complex z2 = zpts[rest % nz];
            const Complex z1 = zpts[rest / nz];
            const Complex zl = lams[il].zl;
            const double cd1 = detail::cd_raw(z1, zl);
            const double cd2 = detail::cd_raw(z2, zl);
            const double cd3 = detail::cd_raw(z3, zl);
            const double s = cd1 + cd2 + cd3;
            spread_sum += std::abs(cd1 / s - 1.0 / 3.0) + std::abs(cd2 / s - 1.0 / 3.0) +
                          std::abs(cd3 / s - 1.0 / 3.0);
        }

        DyadicLevel lvl;
        lvl.im_floor = floor;
        lvl.sup = best.value;
        lvl.margin = 1.0 - best.value;
        lvl.mean_nu_spread_top = top.empty() ? 0.0 : spread_sum / static_cast<double>(top.size());
        lvl.samples = total;
        report.levels.push_back(lvl);
        report.samples += total;
        if (best.value >= 1.0) report.counterexample = true;

        if (best.value > overall.value) {
            overall = best;
            std::size_t rest = best.index;
            const std::size_t il = rest % nl;
            rest /= nl;
            const Complex z3 = zpts[rest % nz];
            rest /= nz;
            const Complex z2 = zpts[rest % nz];
            const Complex z1 = zpts[rest / nz];
            overall_argmax = {z1.real(), z1.imag(), z2.real(),          z2.imag(),
                              z3.real(), z3.imag(), lams[il].lambda.real()};
        }

        if (floor <= grid.im_floor_end) break;
        floor /= 2.0;
    }

    report.sup = overall.value;
    report.refined_sup = overall.value;
    report.margin = 1.0 - overall.value;
    report.argmax = overall_argmax;
    return report;
}

} // namespace hypermu
