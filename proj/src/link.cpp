#include "thzcav/link.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "thzcav/constants.hpp"
#include "thzcav/errors.hpp"

namespace thzcav::link {

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

std::size_t CorridorScenario::tbs_count() const
{
    const double cells = density * length;
    if (!(cells >= 1.0))
        throw DomainError("corridor holds no TBS (mu L < 1)");
    return static_cast<std::size_t>(std::llround(cells));
}

double CorridorScenario::interferer_shape(std::size_t tbs_index) const
{
    if (m_interf.size() == 1)
        return m_interf.front();
    if (tbs_index >= m_interf.size())
        throw ValidationError("m_interf lists " + std::to_string(m_interf.size()) +
                              " shapes but TBS index " + std::to_string(tbs_index) + " was requested");
    return m_interf[tbs_index];
}

double CorridorScenario::zeta() const
{
    const double wavelength_term = codata.speed_of_light / (4.0 * std::numbers::pi * carrier_frequency);
    return gain_tx * gain_rx * wavelength_term * wavelength_term;
}

void CorridorScenario::validate() const
{
    if (!(length > 0.0))
        throw ValidationError("L must be positive");
    if (!(density > 0.0))
        throw ValidationError("mu must be positive");
    if (!(density_max > 0.0))
        throw ValidationError("mu_max must be positive");
    if (!(density * length >= 1.0))
        throw ValidationError("corridor holds no TBS (mu L < 1)");
    if (!(bs_height >= 0.0) || !(safety_distance >= 0.0))
        throw ValidationError("h_bs and d_safe must be non-negative");
    if (!(tx_power > 0.0))
        throw ValidationError("P_tx must be positive");
    if (!(gain_tx > 0.0) || !(gain_rx > 0.0))
        throw ValidationError("antenna gains must be positive");
    if (!(carrier_frequency > 0.0))
        throw ValidationError("f must be positive");
    if (!(absorption >= 0.0) || std::isinf(absorption))
        throw ValidationError("k_abs must be finite and non-negative");
    if (!(alignment >= 0.0 && alignment <= 1.0))
        throw ValidationError("F must lie in [0, 1]");
    if (!(m_serving >= 0.5))
        throw ValidationError("m_serving must be at least 0.5");
    if (m_interf.empty())
        throw ValidationError("m_interf must hold at least one shape");
    for (double m : m_interf)
        if (!(m >= 0.5))
            throw ValidationError("every m_interf shape must be at least 0.5");
    if (m_interf.size() > 1 && m_interf.size() != tbs_count())
        throw ValidationError("m_interf lists " + std::to_string(m_interf.size()) + " shapes for " +
                              std::to_string(tbs_count()) + " TBSs");
    if (!(bandwidth > 0.0))
        throw ValidationError("W must be positive");
    if (!(thermal_noise >= 0.0))
        throw ValidationError("sigma2 must be non-negative");
    if (!(ho_delay >= 0.0))
        throw ValidationError("h_d must be non-negative");
    traffic.validate();
}

CorridorScenario reference_scenario()
{
    CorridorScenario s;
    s.absorption = 0.01;
    return s;
}

std::vector<double> tbs_positions(double density, double length)
{
    if (!(density > 0.0) || !(length > 0.0))
        throw DomainError("tbs_positions: density and length must be positive");
    if (!(density * length >= 1.0))
        throw DomainError("corridor holds no TBS (mu L < 1)");
    const auto count = static_cast<std::size_t>(std::llround(density * length));
    std::vector<double> positions(count);
    for (std::size_t i = 0; i < count; ++i)
        positions[i] = (static_cast<double>(i) + 0.5) / density;
    return positions;
}

double distance(double axial_offset, double bs_height, double safety_distance)
{
    if (!(bs_height >= 0.0) || !(safety_distance >= 0.0))
        throw DomainError("distance: h_bs and d_safe must be non-negative");
    return std::sqrt(axial_offset * axial_offset + bs_height * bs_height + safety_distance * safety_distance);
}

namespace {

double spreading(const CorridorScenario& s, double d)
{
    if (!(d > 0.0))
        throw DomainError("link distance must be positive");
    return s.tx_power * s.zeta() / (d * d);
}

} // namespace

double mean_signal_power(const CorridorScenario& s, double d)
{
    return spreading(s, d) * std::exp(-s.absorption * d);
}

double interference_coefficient(const CorridorScenario& s, double d)
{
    const double b = spreading(s, d) * s.alignment;
    return s.interferer_beer_lambert ? b * std::exp(-s.absorption * d) : b;
}

double absorption_noise_coefficient(const CorridorScenario& s, double d)
{
    return spreading(s, d) * -std::expm1(-s.absorption * d);
}

LinkGeometry link_geometry(const CorridorScenario& s, double cav_position)
{
    if (!(cav_position >= 0.0 && cav_position <= s.length))
        throw DomainError("link_geometry: CAV position outside [0, L]");
    const auto positions = tbs_positions(s.density, s.length);

    LinkGeometry g;
    double best = std::fabs(positions.front() - cav_position);
    for (std::size_t i = 1; i < positions.size(); ++i) {
        const double offset = std::fabs(positions[i] - cav_position);
        if (offset < best) {
            best = offset;
            g.serving_index = i;
        }
    }
    g.serving_distance = distance(best, s.bs_height, s.safety_distance);
    g.interferer_indices.reserve(positions.size() - 1);
    g.interferer_distances.reserve(positions.size() - 1);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i == g.serving_index)
            continue;
        g.interferer_indices.push_back(i);
        g.interferer_distances.push_back(
            distance(std::fabs(positions[i] - cav_position), s.bs_height, s.safety_distance));
    }
    return g;
}

double worst_case_position(const CorridorScenario& s)
{
    const auto n = s.tbs_count();
    // boundaries sit at i / mu, i = 0..N; pick the one nearest the centre
    const double edge = static_cast<double>((n + 1) / 2) / s.density;
    return std::min(edge, s.length);
}

double shannon_rate(const CorridorScenario& s, double sinr)
{
    if (!(sinr >= 0.0))
        throw DomainError("shannon_rate: SINR must be non-negative");
    return s.bandwidth * std::log2(1.0 + sinr);
}

} // namespace thzcav::link
