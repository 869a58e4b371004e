#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hypermu {

inline constexpr const char* kReportSchema = "hypermu-report/1";

struct IdentityResult {
    std::string name;
    double max_residual = 0;
    std::uint64_t samples = 0;
    std::uint64_t skipped = 0;
    std::uint64_t worst_index = 0;
};

struct IdentityReport {
    std::string mode; // "float" | "exact"
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double threshold = 1e-9;
    std::vector<IdentityResult> results;
    bool pass = false;
};

struct DyadicLevel {
    double im_floor = 0;
    double sup = 0;
    double margin = 0;
    double mean_nu_spread_top = 0; // mean ||nu - (1/3,1/3,1/3)||_1 over the top cells
    std::uint64_t samples = 0;
};

struct ScanReport {
    std::string target; // "mu2" | "mu3"
    double sup = 0;
    double margin = 1;
    bool counterexample = false;
    std::vector<std::string> axis_names;
    std::vector<double> argmax;
    double refined_sup = 0;
    std::uint64_t samples = 0;
    std::uint64_t skipped = 0;
    // mu2 only: diagonal slice sup per Im(lambda) level.
    std::vector<double> diag_lambda_im;
    std::vector<double> diag_sup;
    // mu3 only: dyadic im_floor schedule.
    std::vector<DyadicLevel> levels;
    // Per-cell rows (coordinates then value) when collection is enabled.
    std::vector<std::vector<double>> cells;
};

inline constexpr std::size_t kCellDumpCap = 1u << 22;

struct LimitReport {
    std::string path;
    double limit = 0;
    double order_estimate = 0;
    std::vector<double> tail; // last usable raw values
    bool converged = false;
    std::string diagnostic;
    // iinf-check paths: |phi| along the schedule instead of mu2.
    bool tracks_phi = false;
    double abs_phi_at_t20 = 0;
};

struct EnvelopeReport {
    double p = 2;
    double fitted_c = 0;   // least-squares envelope constant over q-magnitude bins
    double raw_max = 0;    // best unrefined sample ratio
    double max_ratio = 0;  // refined max of cd(phi(..)) / (sum cd * (1 + sum q^2))
    double half_max_ratio = 0; // same estimate over the first half of the samples
    double doubling_change = 0;
    std::uint64_t samples = 0;
    std::uint64_t skipped = 0;
};

struct ProbeReport {
    std::uint64_t samples = 0;
    double max_isometry_residual = 0;
    double max_convexity_violation = 0;
    double min_strictness_margin = 0; // convexity gap at separated points
    bool pass = false;
};

struct SeriesReport {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> meta; // config echo
    bool early_stop = false;
    std::string diagnostic;
};

// JSON/CSV emission. Doubles render shortest-round-trip (JSON) or "%.17g"
// (CSV), so identical reports serialize to identical bytes.
std::string to_json(const IdentityReport& r, bool verbose = false);
std::string to_json(const ScanReport& r, bool verbose = false);
std::string to_json(const LimitReport& r, bool verbose = false);
std::string to_json(const EnvelopeReport& r, bool verbose = false);
std::string to_json(const ProbeReport& r, bool verbose = false);
std::string to_json(const SeriesReport& r, bool verbose = false);

std::string to_csv(const IdentityReport& r);
std::string to_csv(const ScanReport& r);
std::string to_csv(const LimitReport& r);
std::string to_csv(const EnvelopeReport& r);
std::string to_csv(const ProbeReport& r);
std::string to_csv(const SeriesReport& r);

} // namespace hypermu
