#pragma once

// Corridor geometry and the per-link power coefficients that feed the SINR:
// mean serving signal a, interferer coefficient b_k and molecular absorption
// noise b_j.

#include <cstddef>
#include <vector>

#include "thzcav/mobility.hpp"

namespace thzcav::link {

double db_to_linear(double db);

/// Full network, traffic and channel parameter set of one corridor.
struct CorridorScenario {
    double length = 2000.0;             // L [m]
    double density = 0.1;               // mu [1/m]
    double density_max = 0.5;           // mu_max [1/m]
    double bs_height = 8.0;             // h_bs [m]
    double safety_distance = 5.0;       // d_safe [m]
    double tx_power = 0.2;              // P_tx [W]
    double gain_tx = 316.227766016838;  // linear (25 dB)
    double gain_rx = 316.227766016838;  // linear (25 dB)
    double carrier_frequency = 0.837e12;  // f [Hz]
    double absorption = 0.0;            // k(f) [1/m]
    double alignment = 0.0069;          // F
    double m_serving = 2.0;
    // One entry broadcasts to every TBS; otherwise one entry per TBS index.
    std::vector<double> m_interf{2.5};
    double bandwidth = 3e9;             // W [Hz]
    double thermal_noise = 0.0;         // sigma^2 [W], Monte-Carlo only
    double ho_delay = 0.35;             // h_d [s/HO]
    // Apply exp(-k d) to interferer links as well. Off: interferers follow the
    // plain F d^-2 law.
    bool interferer_beer_lambert = false;
    mobility::TrafficParams traffic;

    /// N = round(mu L). Throws DomainError when mu L < 1.
    std::size_t tbs_count() const;
    double interferer_shape(std::size_t tbs_index) const;
    /// zeta = G_tx G_rx (c / 4 pi f)^2
    double zeta() const;
    void validate() const;
};

/// Reference corridor at 0.837 THz. No line-by-line k(f) is attached; the
/// fixed k = 0.01 1/m is a transmission-window value.
CorridorScenario reference_scenario();

struct LinkGeometry {
    std::size_t serving_index = 0;
    double serving_distance = 0.0;
    std::vector<std::size_t> interferer_indices;
    std::vector<double> interferer_distances;
};

/// Axial TBS coordinates: spacing 1/mu, first TBS at 1/(2 mu), round(mu L) of them.
std::vector<double> tbs_positions(double density, double length);

double distance(double axial_offset, double bs_height, double safety_distance);

double mean_signal_power(const CorridorScenario& s, double d);
double interference_coefficient(const CorridorScenario& s, double d);
double absorption_noise_coefficient(const CorridorScenario& s, double d);

/// Nearest-TBS association; every other TBS in the corridor interferes.
/// Ties resolve to the lower index.
LinkGeometry link_geometry(const CorridorScenario& s, double cav_position);

/// Cell edge closest to the corridor centre, the worst-case CAV location.
double worst_case_position(const CorridorScenario& s);

double shannon_rate(const CorridorScenario& s, double sinr);

} // namespace thzcav::link
