#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "thzcav/absorption.hpp"
#include "thzcav/link.hpp"

namespace fixtures {

inline thzcav::absorption::SpectralLine line(double f_c, double alpha_air = 3e9, double alpha_self = 1.5e10)
{
    return {"H2O", "1", f_c, 1e-2, alpha_air, alpha_self, 0.68};
}

inline thzcav::absorption::GasMixture humid_air()
{
    thzcav::absorption::GasMixture mix;
    mix.mixing_ratios["H2O"] = 0.01;
    return mix;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

} // namespace fixtures
