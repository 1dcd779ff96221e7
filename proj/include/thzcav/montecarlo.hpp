#pragma once

// Monte-Carlo oracle for the closed-form outage. Trials are split into blocks
// of kBlockSize; block b draws from its own stream seeded by (seed, b), so
// results depend on the seed only, never on the number of workers.

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "thzcav/estimate.hpp"
#include "thzcav/link.hpp"
#include "thzcav/statistics.hpp"

namespace thzcav::mc {

inline constexpr std::uint64_t kBlockSize = 1u << 15;

struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    bool include_thermal_noise = false;
    // Reuse the serving-link fade for the absorption-noise term instead of an
    // independent draw. The closed form assumes independence.
    bool shared_serving_fade = false;
    // Pair trials with serving fades drawn at u and 1 - u (by inversion).
    bool antithetic = false;
    unsigned workers = 0;  // 0: hardware concurrency

    void validate() const;
};

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t block);

    double uniform() { return uniform_(engine_); }
    double normal() { return normal_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Gamma(shape, 1) by Marsaglia-Tsang squeeze/rejection; shapes below 1 use
/// Gamma(shape + 1) * U^(1/shape).
class GammaSampler {
public:
    explicit GammaSampler(double shape);

    double shape() const { return shape_; }

    double operator()(RandomStream& rs) const;

private:
    double shape_;
    double d_;
    double c_;
    bool boosted_;
};

/// Nakagami-m power gain: Gamma(shape m, rate m), unit mean. Requires m >= 0.5.
double sample_nakagami_power(double m, RandomStream& rs);

McEstimate simulate_outage(const link::CorridorScenario& s, double cav_position, double velocity,
                           const McConfig& mc);

/// Empirical CDF of the per-trial SINR at each point of an ascending grid.
std::vector<double> simulate_sinr_cdf(const link::CorridorScenario& s, double cav_position,
                                      std::span<const double> z_grid, const McConfig& mc);

/// Sup distance between a sorted sample and a continuous CDF.
template <typename Cdf>
double ks_distance(std::span<const double> sorted, Cdf&& cdf)
{
    const double n = static_cast<double>(sorted.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        sup = std::max({sup, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return sup;
}

/// One-sample Kolmogorov critical value at the 1% level, 1.63 / sqrt(n).
double kolmogorov_bound(std::uint64_t samples);

struct GapReport {
    double sup_distance = 0.0;
    double sampling_bound = 0.0;
    std::uint64_t samples = 0;
    stats::GammaApprox approx;
};

/// KS distance between sampled sums of `terms` and their moment-matched Gamma.
GapReport ws_approximation_gap(std::span<const stats::GammaTerm> terms, const McConfig& mc);

/// Draws n samples of a weighted Gamma sum, deterministic in (seed, n).
std::vector<double> sample_gamma_sum(std::span<const stats::GammaTerm> terms, std::uint64_t n,
                                     std::uint64_t seed, unsigned workers = 0);

} // namespace thzcav::mc
