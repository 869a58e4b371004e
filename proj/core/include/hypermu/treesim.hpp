#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypermu/halfplane.hpp"
#include "hypermu/report.hpp"

namespace hypermu {

enum class PotentialLaw { Uniform, Bernoulli };

struct SimConfig {
    std::size_t population = 1000;
    std::size_t generations = 1000;
    double E = 0.5;            // Re(lambda)
    double eta = 0.1;          // Im(lambda), > 0
    double eta_end = 0.0;      // > 0 enables a geometric decay of eta per generation
    double delta = 0.0;        // potential half-width
    PotentialLaw law = PotentialLaw::Uniform;
    double p = 2.0;            // moment exponent, > 1
    std::uint64_t seed = 1;
    Complex initial{0.0, 1.0}; // starting point for the whole population
    unsigned jobs = 1;

    void validate() const;
    // Spectral parameter used for generation g of G.
    Complex lambda_at(std::size_t g, std::size_t total) const;
    Complex lambda() const { return {E, eta}; }
};

// Per-generation population moments: mean cd^p, max cd, mean hyperbolic
// distance to z_lambda. Row 0 describes the initial population.
struct MomentSeries {
    SimConfig config;
    std::vector<double> mean_cdp;
    std::vector<double> max_cd;
    std::vector<double> mean_dist;
    bool early_stop = false;
    std::size_t stop_generation = 0;
    std::string diagnostic;

    SeriesReport to_report() const;
};

// Evolves a population under z' = phi(z_a, z_b, q_a, q_b, lambda): each
// generation draws two parent permutations, pairs adjacent entries of the
// combined stream, and applies fresh i.i.d. potentials per offspring edge.
MomentSeries run(const SimConfig& config);

// Im(fixed_point(E + i eta)) tabulated over an energy range and eta schedule.
struct FixedPointProfile {
    std::vector<double> energies;
    std::vector<double> etas;
    std::vector<std::vector<double>> im_z; // [energy][eta]

    SeriesReport to_report() const;
};

FixedPointProfile fixed_point_profile(const std::vector<double>& energies,
                                      const std::vector<double>& eta_schedule);

} // namespace hypermu
