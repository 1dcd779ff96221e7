#include "thzcav/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "thzcav/errors.hpp"

namespace thzcav::config {

namespace {

namespace pt = boost::property_tree;

std::string trimmed(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

class Section {
public:
    Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

    std::optional<std::string> text(const std::string& key)
    {
        used_.insert(key);
        if (!tree_)
            return std::nullopt;
        const auto it = tree_->find(key);
        if (it == tree_->not_found())
            return std::nullopt;
        return trimmed(it->second.data());
    }

    std::optional<double> number(const std::string& key)
    {
        const auto raw = text(key);
        if (!raw)
            return std::nullopt;
        return to_number(key, *raw);
    }

    std::optional<std::uint64_t> integer(const std::string& key)
    {
        const auto raw = text(key);
        if (!raw)
            return std::nullopt;
        std::uint64_t value = 0;
        const auto* end = raw->data() + raw->size();
        const auto [ptr, ec] = std::from_chars(raw->data(), end, value);
        if (ec == std::errc{} && ptr == end)
            return value;
        // accept 1e6-style counts
        const double d = to_number(key, *raw);
        if (d < 0.0 || d != std::floor(d) || d > 1.8e19)
            throw ValidationError(where(key) + ": expected a non-negative integer, got '" + *raw + "'");
        return static_cast<std::uint64_t>(d);
    }

    std::optional<bool> flag(const std::string& key)
    {
        const auto raw = text(key);
        if (!raw)
            return std::nullopt;
        if (*raw == "true" || *raw == "1" || *raw == "yes" || *raw == "on")
            return true;
        if (*raw == "false" || *raw == "0" || *raw == "no" || *raw == "off")
            return false;
        throw ValidationError(where(key) + ": expected a boolean, got '" + *raw + "'");
    }

    std::vector<double> number_list(const std::string& key)
    {
        std::vector<double> out;
        const auto raw = text(key);
        if (!raw)
            return out;
        std::stringstream ss(*raw);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(to_number(key, trimmed(item)));
        return out;
    }

    std::map<std::string, double> prefixed(const std::string& prefix)
    {
        std::map<std::string, double> out;
        if (!tree_)
            return out;
        for (const auto& [key, node] : *tree_) {
            if (key.rfind(prefix, 0) == 0) {
                used_.insert(key);
                out[key.substr(prefix.size())] = to_number(key, trimmed(node.data()));
            }
        }
        return out;
    }

    void finish() const
    {
        if (!tree_)
            return;
        for (const auto& [key, node] : *tree_)
            if (!used_.contains(key))
                throw ValidationError("unknown key '" + key + "' in section [" + name_ + "]");
    }

private:
    std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

    double to_number(const std::string& key, std::string raw) const
    {
        if (!raw.empty() && raw.front() == '+')
            raw.erase(0, 1);
        double value = 0.0;
        const auto* end = raw.data() + raw.size();
        const auto [ptr, ec] = std::from_chars(raw.data(), end, value);
        if (raw.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
            throw ValidationError(where(key) + ": not a number: '" + raw + "'");
        return value;
    }

    std::string name_;
    const pt::ptree* tree_;
    std::set<std::string> used_;
};

template <typename T, typename U>
void assign(T& field, const std::optional<U>& value)
{
    if (value)
        field = static_cast<T>(*value);
}

} // namespace

ScenarioConfig parse_config(std::istream& in, const std::filesystem::path& base_dir)
{
    pt::ptree root;
    try {
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(e.message(), e.line());
    }

    static const std::set<std::string> known{"link", "traffic", "absorption", "optimizer", "montecarlo"};
    for (const auto& [name, node] : root) {
        if (node.empty())
            throw ValidationError("key '" + name + "' outside of any section");
        if (!known.contains(name))
            throw ValidationError("unknown section [" + name + "]");
    }
    auto section = [&](const std::string& name) {
        const auto it = root.find(name);
        return Section(name, it == root.not_found() ? nullptr : &it->second);
    };

    ScenarioConfig cfg;
    cfg.scenario = link::reference_scenario();
    auto& s = cfg.scenario;

    auto link_sec = section("link");
    assign(s.length, link_sec.number("L"));
    assign(s.density, link_sec.number("mu"));
    assign(s.bs_height, link_sec.number("h_bs"));
    assign(s.safety_distance, link_sec.number("d_safe"));
    assign(s.tx_power, link_sec.number("P_tx"));
    if (auto g = link_sec.number("G_tx_dB"))
        s.gain_tx = link::db_to_linear(*g);
    if (auto g = link_sec.number("G_rx_dB"))
        s.gain_rx = link::db_to_linear(*g);
    assign(s.carrier_frequency, link_sec.number("f"));
    const auto alignment = link_sec.number("F");
    const auto theta_tx = link_sec.number("theta_tx");
    const auto theta_rx = link_sec.number("theta_rx");
    if (alignment && (theta_tx || theta_rx))
        throw ValidationError("[link] give either F or theta_tx/theta_rx, not both");
    if (theta_tx.has_value() != theta_rx.has_value())
        throw ValidationError("[link] theta_tx and theta_rx must be given together");
    if (alignment)
        s.alignment = *alignment;
    if (theta_tx)
        s.alignment = *theta_tx * *theta_rx / (4.0 * std::numbers::pi * std::numbers::pi);
    assign(s.m_serving, link_sec.number("m_serving"));
    if (auto shapes = link_sec.number_list("m_interf"); !shapes.empty())
        s.m_interf = shapes;
    assign(s.bandwidth, link_sec.number("W"));
    assign(s.thermal_noise, link_sec.number("sigma2"));
    assign(s.ho_delay, link_sec.number("h_d"));
    assign(s.interferer_beer_lambert, link_sec.flag("interferer_beer_lambert"));
    link_sec.finish();

    auto traffic = section("traffic");
    assign(s.traffic.log_mean, traffic.number("mu_LN"));
    assign(s.traffic.log_scatter, traffic.number("sigma_LN"));
    assign(s.traffic.decision_time, traffic.number("tau"));
    assign(s.traffic.crash_level, traffic.number("epsilon"));
    assign(s.traffic.min_flow, traffic.number("Q_min"));
    assign(s.traffic.max_speed, traffic.number("V_max"));
    assign(s.traffic.rate_threshold, traffic.number("R_th"));
    assign(s.traffic.outage_cap, traffic.number("O_th"));
    traffic.finish();

    auto abs_sec = section("absorption");
    const auto k_abs = abs_sec.number("k_abs");
    const auto catalog_path = abs_sec.text("catalog");
    assign(cfg.mixture.pressure, abs_sec.number("p"));
    assign(cfg.mixture.reference_pressure, abs_sec.number("p0"));
    assign(cfg.mixture.temperature, abs_sec.number("T"));
    assign(cfg.mixture.standard_temperature, abs_sec.number("T_sp"));
    assign(cfg.mixture.reference_temperature, abs_sec.number("T0"));
    cfg.mixture.mixing_ratios = abs_sec.prefixed("q.");
    abs_sec.finish();
    cfg.mixture.validate();
    if (k_abs && catalog_path)
        throw ValidationError("[absorption] give either k_abs or catalog, not both");
    if (catalog_path) {
        std::filesystem::path p(*catalog_path);
        if (p.is_relative())
            p = base_dir / p;
        cfg.catalog = absorption::load_line_catalog(p);
        s.absorption = absorption::absorption_coefficient(cfg.catalog->lines, cfg.mixture, s.carrier_frequency).k;
    } else if (k_abs) {
        s.absorption = *k_abs;
    }

    auto optimizer = section("optimizer");
    assign(s.density_max, optimizer.number("mu_max"));
    assign(cfg.search.grid_points, optimizer.integer("grid_points"));
    assign(cfg.search.tolerance, optimizer.number("tolerance"));
    optimizer.finish();
    if (cfg.search.grid_points < 2)
        throw ValidationError("[optimizer] grid_points must be at least 2");
    if (!(cfg.search.tolerance > 0.0))
        throw ValidationError("[optimizer] tolerance must be positive");

    auto montecarlo = section("montecarlo");
    assign(cfg.mc.trials, montecarlo.integer("trials"));
    assign(cfg.mc.seed, montecarlo.integer("seed"));
    assign(cfg.mc.include_thermal_noise, montecarlo.flag("include_thermal_noise"));
    assign(cfg.mc.shared_serving_fade, montecarlo.flag("shared_serving_fade"));
    assign(cfg.mc.antithetic, montecarlo.flag("antithetic"));
    assign(cfg.mc.workers, montecarlo.integer("workers"));
    montecarlo.finish();

    s.validate();
    cfg.mc.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config '" + path.string() + "'", 0);
    return parse_config(in, path.parent_path());
}

std::string reference_config_text()
{
    return R"(; Reference THz corridor (SI units throughout)
[link]
L = 2000
mu = 0.1
h_bs = 8
d_safe = 5
P_tx = 0.2
G_tx_dB = 25
G_rx_dB = 25
f = 0.837e12
F = 0.0069
m_serving = 2
m_interf = 2.5
W = 3e9
sigma2 = 0
h_d = 0.35
interferer_beer_lambert = false

[traffic]
mu_LN = 0
sigma_LN = 1
tau = 5e-3
epsilon = 0.02
Q_min = 10
V_max = 30
R_th = 1e9
O_th = 0.1

[absorption]
k_abs = 0.01

[optimizer]
mu_max = 0.5
grid_points = 256
tolerance = 1e-6

[montecarlo]
trials = 1000000
seed = 1
include_thermal_noise = false
shared_serving_fade = false
antithetic = false
)";
}

} // namespace thzcav::config
