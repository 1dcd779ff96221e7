#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "thzcav/config.hpp"
#include "thzcav/errors.hpp"

using namespace thzcav;

namespace {

config::ScenarioConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return config::parse_config(in, THZCAV_CONFIG_DIR);
}

} // namespace

TEST_CASE("reference config reproduces the reference scenario")
{
    const auto cfg = parse(config::reference_config_text());
    const auto ref = link::reference_scenario();
    const auto& s = cfg.scenario;
    CHECK(s.length == ref.length);
    CHECK(s.density == ref.density);
    CHECK(s.gain_tx == doctest::Approx(ref.gain_tx).epsilon(1e-14));
    CHECK(s.absorption == ref.absorption);
    CHECK(s.alignment == ref.alignment);
    CHECK(s.m_interf == ref.m_interf);
    CHECK(s.traffic.outage_cap == ref.traffic.outage_cap);
    CHECK(s.traffic.rate_threshold == ref.traffic.rate_threshold);
    CHECK(cfg.mc.trials == 1'000'000);
    CHECK(cfg.search.grid_points == 256);

    const auto file = config::load_config(THZCAV_CONFIG_DIR "/reference.ini");
    CHECK(file.scenario.density == ref.density);
}

TEST_CASE("missing sections keep defaults")
{
    const auto cfg = parse("[traffic]\nO_th = 0.2\n");
    CHECK(cfg.scenario.traffic.outage_cap == 0.2);
    CHECK(cfg.scenario.density == 0.1);
}

TEST_CASE("beamwidths set the alignment factor")
{
    const auto cfg = parse("[link]\ntheta_tx = 0.5\ntheta_rx = 0.4\n");
    CHECK(cfg.scenario.alignment == doctest::Approx(0.2 / (4 * std::numbers::pi * std::numbers::pi)));
    CHECK_THROWS_AS(parse("[link]\nF = 0.1\ntheta_tx = 0.5\ntheta_rx = 0.4\n"), ValidationError);
    CHECK_THROWS_AS(parse("[link]\ntheta_tx = 0.5\n"), ValidationError);
}

TEST_CASE("strict keys and values")
{
    CHECK_THROWS_AS(parse("[link]\nbogus = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse("[nonsense]\nx = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse("mu = 0.1\n"), ValidationError);
    CHECK_THROWS_AS(parse("[link]\nmu = fast\n"), ValidationError);
    CHECK_THROWS_AS(parse("[link]\nW = -3e9\n"), ValidationError);
    CHECK_THROWS_AS(parse("[montecarlo]\nantithetic = maybe\n"), ValidationError);
    CHECK_THROWS_AS(parse("[montecarlo]\ntrials = 0\n"), ValidationError);
    CHECK_THROWS_AS(parse("[optimizer]\ngrid_points = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse("[absorption]\nk_abs = 0.1\ncatalog = ../data/lines_demo.csv\n"), ValidationError);
    CHECK_THROWS_AS(parse("[link\nmu = 1\n"), ParseError);
}

TEST_CASE("lists, booleans and counts")
{
    const auto cfg = parse("[link]\nL = 30\nmu = 0.1\nm_interf = 1.5, 2, 3\n[montecarlo]\ntrials = 1e5\n"
                           "antithetic = true\nworkers = 2\n");
    CHECK(cfg.scenario.m_interf == std::vector<double>{1.5, 2.0, 3.0});
    CHECK(cfg.mc.trials == 100'000);
    CHECK(cfg.mc.antithetic);
    CHECK(cfg.mc.workers == 2);
}

TEST_CASE("catalog-driven absorption")
{
    const auto cfg = config::load_config(THZCAV_CONFIG_DIR "/catalog.ini");
    REQUIRE(cfg.catalog.has_value());
    CHECK(cfg.catalog->lines.size() == 7);
    CHECK(cfg.mixture.mixing_ratios.at("H2O") == 0.01);
    CHECK(cfg.scenario.absorption > 0.0);
    CHECK(cfg.scenario.absorption ==
          absorption::absorption_coefficient(cfg.catalog->lines, cfg.mixture, cfg.scenario.carrier_frequency).k);
}
