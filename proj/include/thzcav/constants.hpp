#pragma once

namespace thzcav {

// CODATA 2018 exact/recommended values, SI units.
struct PhysicalConstants {
    double speed_of_light = 299'792'458.0;     // m/s
    double planck = 6.626'070'15e-34;          // J s
    double boltzmann = 1.380'649e-23;          // J/K
    double avogadro = 6.022'140'76e23;         // 1/mol
    double gas_constant = 8.314'462'618;       // J/(mol K)
};

inline constexpr PhysicalConstants codata{};

} // namespace thzcav
