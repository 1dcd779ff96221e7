#pragma once

#include <cmath>
#include <cstdint>

namespace thzcav {

/// Binomial Monte-Carlo estimate of a probability.
struct McEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / trials)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    static McEstimate from_count(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed)
    {
        const double p = static_cast<double>(hits) / static_cast<double>(trials);
        return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, seed};
    }
};

} // namespace thzcav
