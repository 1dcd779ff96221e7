#pragma once

// Scenario configuration file: INI-style sections with flat `key = value`
// pairs. Unknown sections or keys are rejected.
//
//   [link]        L mu h_bs d_safe P_tx G_tx_dB G_rx_dB f F | theta_tx theta_rx
//                 m_serving m_interf W sigma2 h_d interferer_beer_lambert
//   [traffic]     mu_LN sigma_LN tau epsilon Q_min V_max R_th O_th
//   [absorption]  k_abs | catalog, p p0 T T_sp T0, q.<gas>[/<iso>]
//   [optimizer]   mu_max grid_points tolerance
//   [montecarlo]  trials seed include_thermal_noise shared_serving_fade antithetic workers

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "thzcav/absorption.hpp"
#include "thzcav/link.hpp"
#include "thzcav/montecarlo.hpp"
#include "thzcav/optimizer.hpp"

namespace thzcav::config {

struct ScenarioConfig {
    link::CorridorScenario scenario;
    std::optional<absorption::LineCatalog> catalog;
    absorption::GasMixture mixture;
    mc::McConfig mc;
    opt::ScalarSearch search;
};

/// Relative catalog paths resolve against `base_dir`.
ScenarioConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

/// Reference corridor as config text; parses back to reference_scenario().
std::string reference_config_text();

} // namespace thzcav::config
