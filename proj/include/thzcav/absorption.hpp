#pragma once

// Line-by-line molecular absorption coefficient k(f) from a simplified
// spectral-line catalog.
//
// Units: every frequency, resonance and half-width is held in Hz. Catalogs
// written in wavenumbers (cm^-1) are converted on load with f = 100 c nu.
// Line intensities are stored exactly as the catalog declares them, so k(f)
// is expressed in 1/m only up to a fixed catalog-dependent scale.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thzcav/constants.hpp"

namespace thzcav::absorption {

enum class FrequencyUnit { hertz, wavenumber };

struct SpectralLine {
    std::string gas_id;
    std::string isotopologue_id;
    double center_frequency = 0.0;    // f_c [Hz]
    double intensity = 0.0;           // S, catalog-native units
    double alpha_air = 0.0;           // air-broadened half-width [Hz/atm]
    double alpha_self = 0.0;          // self-broadened half-width [Hz/atm]
    double temperature_exponent = 0.0;

    void validate() const;
};

struct LineCatalog {
    FrequencyUnit source_unit = FrequencyUnit::hertz;
    std::string intensity_units;
    std::vector<SpectralLine> lines;
};

/// Ambient conditions. Mixing ratios are keyed by mixture_key(gas, isotopologue);
/// a bare gas id acts as a fallback for every isotopologue of that gas.
struct GasMixture {
    double pressure = 1.0;                 // p [atm]
    double reference_pressure = 1.0;       // p0 [atm]
    double temperature = 296.0;            // T [K]
    double standard_temperature = 273.15;  // T_sp [K]
    double reference_temperature = 296.0;  // T0 [K]
    std::map<std::string, double> mixing_ratios;

    double mixing_ratio(const SpectralLine& line) const;
    void validate() const;
};

std::string mixture_key(std::string_view gas_id, std::string_view isotopologue_id);

/// Parses the CSV catalog format:
///
///     # units: f_c=<Hz|cm-1>, S=<text>
///     gas_id,iso_id,f_c,S,alpha_air,alpha_self,gamma_exp
///     H2O,1,5.56936e11,1.0e-2,3.0e9,1.5e10,0.68
///
/// The units comment must precede the first data row. Throws ParseError for
/// malformed rows and ValidationError (naming the row) for invariant violations.
LineCatalog parse_line_catalog(std::istream& in);
LineCatalog load_line_catalog(const std::filesystem::path& path);

/// Lorentz half-width [Hz] of a line under the given conditions.
double lorentz_half_width(const SpectralLine& line, const GasMixture& mix);

/// Van Vleck-Weisskopf line shape with an explicit half-width.
double vvw_line_shape(const SpectralLine& line, double half_width, double frequency);
double vvw_line_shape(const SpectralLine& line, const GasMixture& mix, double frequency);

/// One summand of k(f), with the half-width supplied by the caller. Lets the
/// pressure dependence be checked with the broadening model bypassed.
double line_absorption(const SpectralLine& line, const GasMixture& mix, double frequency,
                       double half_width, const PhysicalConstants& constants = codata);

struct AbsorptionValue {
    double k = 0.0;              // [1/m], up to the catalog intensity scale
    bool empty_catalog = false;  // set when no lines were supplied
};

AbsorptionValue absorption_coefficient(std::span<const SpectralLine> lines, const GasMixture& mix,
                                       double frequency, const PhysicalConstants& constants = codata);

} // namespace thzcav::absorption
