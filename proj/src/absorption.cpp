#include "thzcav/absorption.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <numeric>

#include "thzcav/errors.hpp"

namespace thzcav::absorption {

namespace {

constexpr std::array<std::string_view, 7> kColumns{"gas_id",    "iso_id",     "f_c",      "S",
                                                   "alpha_air", "alpha_self", "gamma_exp"};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double parse_number(std::string_view field, std::string_view column, std::size_t line_no)
{
    // from_chars rejects a leading '+', which some writers emit
    if (!field.empty() && field.front() == '+')
        field.remove_prefix(1);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw ParseError("column '" + std::string(column) + "': not a number: '" + std::string(field) + "'",
                         line_no);
    return value;
}

// "# units: f_c=cm-1, S=cm/molecule"
void parse_units(std::string_view body, LineCatalog& catalog, std::size_t line_no)
{
    bool have_fc = false;
    for (auto item : split(body, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("units entry without '=': '" + std::string(item) + "'", line_no);
        const auto key = trim(item.substr(0, eq));
        const auto value = trim(item.substr(eq + 1));
        if (key == "f_c") {
            if (value == "Hz")
                catalog.source_unit = FrequencyUnit::hertz;
            else if (value == "cm-1")
                catalog.source_unit = FrequencyUnit::wavenumber;
            else
                throw ParseError("unsupported f_c unit '" + std::string(value) + "' (expected Hz or cm-1)", line_no);
            have_fc = true;
        } else if (key == "S") {
            catalog.intensity_units = std::string(value);
        } else {
            throw ParseError("unknown units key '" + std::string(key) + "'", line_no);
        }
    }
    if (!have_fc)
        throw ParseError("units comment does not declare f_c", line_no);
}

} // namespace

void SpectralLine::validate() const
{
    if (!(center_frequency > 0.0))
        throw ValidationError("resonant frequency f_c must be positive");
    if (!(intensity >= 0.0))
        throw ValidationError("line intensity S must be non-negative");
    if (!(alpha_air >= 0.0) || !(alpha_self >= 0.0))
        throw ValidationError("broadening half-widths must be non-negative");
}

std::string mixture_key(std::string_view gas_id, std::string_view isotopologue_id)
{
    return std::string(gas_id) + "/" + std::string(isotopologue_id);
}

double GasMixture::mixing_ratio(const SpectralLine& line) const
{
    if (auto it = mixing_ratios.find(mixture_key(line.gas_id, line.isotopologue_id)); it != mixing_ratios.end())
        return it->second;
    if (auto it = mixing_ratios.find(line.gas_id); it != mixing_ratios.end())
        return it->second;
    return 0.0;
}

void GasMixture::validate() const
{
    if (!(pressure > 0.0) || !(reference_pressure > 0.0))
        throw ValidationError("gas mixture: pressures must be positive");
    if (!(temperature > 0.0) || !(standard_temperature > 0.0) || !(reference_temperature > 0.0))
        throw ValidationError("gas mixture: temperatures must be positive");
    double total = 0.0;
    for (const auto& [key, q] : mixing_ratios) {
        if (!(q >= 0.0 && q <= 1.0))
            throw ValidationError("gas mixture: mixing ratio of '" + key + "' outside [0, 1]");
        total += q;
    }
    if (total > 1.0 + 1e-12)
        throw ValidationError("gas mixture: mixing ratios sum to more than 1");
}

LineCatalog parse_line_catalog(std::istream& in)
{
    LineCatalog catalog;
    bool have_units = false;
    bool have_header = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto text = trim(raw);
        if (line_no == 1 && text.starts_with("\xEF\xBB\xBF"))
            text.remove_prefix(3);
        if (text.empty())
            continue;
        if (text.front() == '#') {
            auto body = trim(text.substr(1));
            if (body.starts_with("units:")) {
                parse_units(trim(body.substr(6)), catalog, line_no);
                have_units = true;
            }
            continue;
        }
        const auto fields = split(text, ',');
        if (!have_header) {
            if (fields.size() != kColumns.size() || !std::equal(fields.begin(), fields.end(), kColumns.begin()))
                throw ParseError("expected header 'gas_id,iso_id,f_c,S,alpha_air,alpha_self,gamma_exp'", line_no);
            have_header = true;
            continue;
        }
        if (!have_units)
            throw ParseError("data row before '# units:' declaration", line_no);
        if (fields.size() != kColumns.size())
            throw ParseError("expected " + std::to_string(kColumns.size()) + " columns, found " +
                                 std::to_string(fields.size()),
                             line_no);

        SpectralLine line;
        line.gas_id = std::string(fields[0]);
        line.isotopologue_id = std::string(fields[1]);
        line.center_frequency = parse_number(fields[2], kColumns[2], line_no);
        line.intensity = parse_number(fields[3], kColumns[3], line_no);
        line.alpha_air = parse_number(fields[4], kColumns[4], line_no);
        line.alpha_self = parse_number(fields[5], kColumns[5], line_no);
        line.temperature_exponent = parse_number(fields[6], kColumns[6], line_no);
        if (line.gas_id.empty())
            throw ParseError("empty gas_id", line_no);

        try {
            line.validate();
        } catch (const ValidationError& e) {
            throw ValidationError("catalog row at line " + std::to_string(line_no) + ": " + e.what());
        }

        if (catalog.source_unit == FrequencyUnit::wavenumber) {
            const double to_hz = 100.0 * codata.speed_of_light;
            line.center_frequency *= to_hz;
            line.alpha_air *= to_hz;
            line.alpha_self *= to_hz;
        }
        catalog.lines.push_back(std::move(line));
    }
    if (!have_header)
        throw ParseError("missing header row", 0);
    return catalog;
}

LineCatalog load_line_catalog(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open line catalog '" + path.string() + "'", 0);
    return parse_line_catalog(in);
}

double lorentz_half_width(const SpectralLine& line, const GasMixture& mix)
{
    if (!(mix.temperature > 0.0))
        throw DomainError("lorentz_half_width: temperature must be positive");
    const double q = mix.mixing_ratio(line);
    const double broadening = (1.0 - q) * line.alpha_air + q * line.alpha_self;
    return broadening * (mix.pressure / mix.reference_pressure) *
           std::pow(mix.reference_temperature / mix.temperature, line.temperature_exponent);
}

double vvw_line_shape(const SpectralLine& line, double half_width, double frequency)
{
    if (!(frequency > 0.0))
        throw DomainError("vvw_line_shape: frequency must be positive");
    const double fc = line.center_frequency;
    const double a2 = half_width * half_width;
    const double g = frequency + fc;
    const double h = frequency - fc;
    if (half_width == 0.0)
        return 0.0;
    return 100.0 * codata.speed_of_light * half_width * frequency / (std::numbers::pi * fc) *
           (1.0 / (g * g + a2) + 1.0 / (h * h + a2));
}

double vvw_line_shape(const SpectralLine& line, const GasMixture& mix, double frequency)
{
    return vvw_line_shape(line, lorentz_half_width(line, mix), frequency);
}

double line_absorption(const SpectralLine& line, const GasMixture& mix, double frequency, double half_width,
                       const PhysicalConstants& constants)
{
    if (!(frequency > 0.0))
        throw DomainError("absorption: frequency must be positive");
    const double q = mix.mixing_ratio(line);
    if (q == 0.0 || line.intensity == 0.0)
        return 0.0;

    // Population factor tanh(h f / 2 k_b T); with f in Hz this is the wavenumber
    // form h c nu / 2 k_b T.
    const double thermal = 2.0 * constants.boltzmann * mix.temperature;
    const double population = std::tanh(constants.planck * frequency / thermal) /
                              std::tanh(constants.planck * line.center_frequency / thermal);

    // The reference temperature in the denominator is taken as T_sp.
    const double p = mix.pressure;
    const double t = mix.temperature;
    const double prefactor = p * p * mix.standard_temperature * q * constants.avogadro * line.intensity /
                             (mix.reference_pressure * mix.standard_temperature * constants.gas_constant * t * t);
    return prefactor * (frequency / line.center_frequency) * population *
           vvw_line_shape(line, half_width, frequency);
}

AbsorptionValue absorption_coefficient(std::span<const SpectralLine> lines, const GasMixture& mix, double frequency,
                                       const PhysicalConstants& constants)
{
    if (!(frequency > 0.0))
        throw DomainError("absorption_coefficient: frequency must be positive");
    AbsorptionValue out;
    out.empty_catalog = lines.empty();
    for (const auto& line : lines)
        out.k += line_absorption(line, mix, frequency, lorentz_half_width(line, mix), constants);
    return out;
}

} // namespace thzcav::absorption
