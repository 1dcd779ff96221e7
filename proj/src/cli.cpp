#include "thzcav/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "thzcav/errors.hpp"
#include "thzcav/mobility.hpp"
#include "thzcav/montecarlo.hpp"
#include "thzcav/optimizer.hpp"
#include "thzcav/parallel.hpp"
#include "thzcav/special.hpp"
#include "thzcav/statistics.hpp"

namespace thzcav::cli {

namespace {

using json = nlohmann::json;

// Locale-independent, round-trip-stable CSV number.
std::string num(double x)
{
    return fmt::format("{:.10g}", x);
}

std::string opt_num(const std::optional<double>& x)
{
    return x ? num(*x) : std::string{};
}

double parse_double(std::string_view text, const char* what)
{
    std::string raw(text);
    if (!raw.empty() && raw.front() == '+')
        raw.erase(0, 1);
    double value = 0.0;
    const auto* end = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(raw.data(), end, value);
    if (raw.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw ValidationError(std::string(what) + ": not a number: '" + std::string(text) + "'");
    return value;
}

std::uint64_t parse_count(std::string_view text, const char* what)
{
    const double d = parse_double(text, what);
    if (d < 0.0 || d != std::floor(d) || d > 1.8e19)
        throw ValidationError(std::string(what) + ": expected a non-negative integer, got '" + std::string(text) + "'");
    return static_cast<std::uint64_t>(d);
}

void require_variable(const SweepSpec& sweep, std::initializer_list<std::string_view> allowed, const char* command)
{
    if (std::find(allowed.begin(), allowed.end(), sweep.variable) != allowed.end())
        return;
    std::string list;
    for (auto v : allowed)
        list += (list.empty() ? "" : ", ") + std::string(v);
    throw ValidationError(std::string(command) + " sweeps one of: " + list + " (got '" + sweep.variable + "')");
}

mc::McConfig mc_config(const config::ScenarioConfig& cfg, const CommandOptions& opts)
{
    auto mc = cfg.mc;
    if (opts.mc_trials)
        mc.trials = *opts.mc_trials;
    if (opts.seed)
        mc.seed = *opts.seed;
    if (opts.workers)
        mc.workers = *opts.workers;
    mc.validate();
    return mc;
}

unsigned workers(const config::ScenarioConfig& cfg, const CommandOptions& opts)
{
    return opts.workers.value_or(cfg.mc.workers);
}

void apply(link::CorridorScenario& s, const std::string& variable, double value)
{
    if (variable == "mu")
        s.density = value;
    else if (variable == "frequency")
        s.carrier_frequency = value;
    else if (variable == "O_th")
        s.traffic.outage_cap = value;
    else if (variable == "epsilon")
        s.traffic.crash_level = value;
    else if (variable == "R_th")
        s.traffic.rate_threshold = value;
}

const absorption::LineCatalog& require_catalog(const config::ScenarioConfig& cfg, const char* command)
{
    if (!cfg.catalog)
        throw ValidationError(std::string(command) + " needs a line catalog ([absorption] catalog or --catalog)");
    return *cfg.catalog;
}

// ---------------------------------------------------------------- outage-sweep

struct OutageRow {
    stats::OutageResult analytic;
    double density = 0.0;
    std::optional<McEstimate> mc;
};

// --------------------------------------------------------------------- validate

struct Check {
    std::string name;
    bool pass = false;
    json detail;
};

Check moment_match(const stats::SinrModel& model)
{
    Check c{"moment_match", true, json::object()};
    if (model.noise_terms.empty()) {
        c.detail["skipped"] = "no interference terms";
        return c;
    }
    long double mean = 0.0L;
    long double var = 0.0L;
    for (const auto& t : model.noise_terms) {
        mean += static_cast<long double>(t.shape) * t.mean_scale;
        var += static_cast<long double>(t.shape) * t.mean_scale * t.mean_scale;
    }
    const auto& g = *model.noise;
    const double mean_err = std::fabs(static_cast<double>((g.shape / g.rate - mean) / mean));
    const double var_err = std::fabs(static_cast<double>((g.shape / (g.rate * g.rate) - var) / var));
    const double err = std::max(mean_err, var_err);
    c.pass = err <= 1e-12;
    c.detail = {{"rel_error", err}, {"bound", 1e-12}, {"terms", model.noise_terms.size()}};
    return c;
}

Check cdf_quadrature(const stats::SinrModel& model)
{
    Check c{"cdf_quadrature", true, json::object()};
    if (!model.law) {
        c.detail["skipped"] = "degenerate SINR law";
        return c;
    }
    const auto law = *model.law;
    boost::math::quadrature::tanh_sinh<double> integrator;
    double worst = 0.0;
    for (double u : {0.01, 0.1, 0.5, 0.9}) {
        const double z = stats::sinr_quantile(u, law);
        // integrate in r = z / scale to keep the abscissae O(1)
        const double r_max = z / law.scale;
        const double area = integrator.integrate(
            [&](double r) { return r > 0.0 ? law.scale * stats::sinr_pdf(r * law.scale, law) : 0.0; }, 0.0, r_max);
        worst = std::max(worst, std::fabs(area - stats::sinr_cdf(z, law)));
    }
    c.pass = worst <= 1e-8;
    c.detail = {{"max_abs_error", worst}, {"bound", 1e-8}};
    return c;
}

Check mc_agreement(const link::CorridorScenario& s, double velocity, const mc::McConfig& mc)
{
    Check c{"mc_agreement", false, json::object()};
    const auto analytic = stats::worst_case_outage(s, velocity);
    if (!analytic.p_out) {
        c.pass = true;
        c.detail["skipped"] = "degenerate SINR law";
        return c;
    }
    const auto est = mc::simulate_outage(s, link::worst_case_position(s), velocity, mc);
    const double gap = *analytic.p_out - est.p_hat;
    const double bound = std::max(0.01, 3.0 * est.std_err);
    c.pass = std::fabs(gap) <= bound;
    c.detail = {{"seed", est.seed},     {"trials", est.trials}, {"p_hat", est.p_hat}, {"std_err", est.std_err},
                {"analytic", *analytic.p_out}, {"gap", gap},     {"bound", bound},     {"velocity", velocity}};
    return c;
}

Check ratio_law_ks(const stats::SinrModel& model, const mc::McConfig& mc)
{
    Check c{"ratio_law_ks", true, json::object()};
    if (!model.law) {
        c.detail["skipped"] = "degenerate SINR law";
        return c;
    }
    const auto law = *model.law;
    std::vector<double> samples(mc.trials);
    const auto blocks = (mc.trials + mc::kBlockSize - 1) / mc::kBlockSize;
    parallel_for(blocks, mc.workers, [&](std::size_t b) {
        mc::RandomStream rs(mc.seed, b);
        const mc::GammaSampler num(law.a);
        const mc::GammaSampler den(law.b);
        const auto first = b * mc::kBlockSize;
        const auto count = std::min(mc::kBlockSize, mc.trials - first);
        for (std::uint64_t t = 0; t < count; ++t) {
            const double x = num(rs);
            samples[first + t] = law.scale * x / den(rs);
        }
    });
    std::sort(samples.begin(), samples.end());
    const double d = mc::ks_distance(samples, [&](double z) { return stats::sinr_cdf(z, law); });
    const double bound = 3.0 * mc::kolmogorov_bound(mc.trials);
    c.pass = d <= bound;
    c.detail = {{"seed", mc.seed}, {"trials", mc.trials}, {"sup_distance", d}, {"bound", bound}};
    return c;
}

Check optimizer_dominance(const config::ScenarioConfig& cfg)
{
    constexpr int kGrid = 40;
    Check c{"optimizer_dominance", false, json::object()};
    const auto& s = cfg.scenario;
    const auto result = opt::solve_p1(s, cfg.search);
    const double v_safe = mobility::v_safe(s.traffic);
    const double v_flow = mobility::v_flow(s.traffic);
    double best = 0.0;
    bool any = false;
    for (int i = 1; i <= kGrid; ++i) {
        auto local = s;
        local.density = s.density_max * i / kGrid;
        if (local.density * local.length < 1.0)
            continue;
        for (int j = 1; j <= kGrid; ++j) {
            const double v = s.traffic.max_speed * j / kGrid;
            if (v > v_safe || v < v_flow)
                continue;
            const auto r = stats::worst_case_outage(local, v);
            if (!(r.p_out.value_or(0.0) <= s.traffic.outage_cap))
                continue;
            any = true;
            best = std::max(best, mobility::traffic_flow(v, s.traffic));
        }
    }
    if (!result.feasible)
        c.pass = !any;
    else
        c.pass = result.q_star >= (1.0 - 1e-3) * best;
    c.detail = {{"q_star", result.feasible ? json(result.q_star) : json(nullptr)},
                {"grid_best", any ? json(best) : json(nullptr)},
                {"grid", fmt::format("{}x{}", kGrid, kGrid)}};
    return c;
}

} // namespace

std::vector<double> SweepSpec::values() const
{
    std::vector<double> out;
    out.reserve(points);
    if (points == 1) {
        out.push_back(start);
        return out;
    }
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        if (scale == SweepScale::log)
            out.push_back(std::exp(std::log(start) + t * (std::log(stop) - std::log(start))));
        else
            out.push_back(start + t * (stop - start));
    }
    // pin the endpoint against rounding
    out.back() = stop;
    return out;
}

SweepSpec parse_sweep(std::string_view text)
{
    std::vector<std::string> parts;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    if (parts.size() < 4 || parts.size() > 5)
        throw ValidationError("sweep must look like VAR:START:STOP:POINTS[:log], got '" + std::string(text) + "'");

    static const std::vector<std::string> variables{"mu", "velocity", "frequency", "O_th", "epsilon", "R_th"};
    SweepSpec sweep;
    sweep.variable = parts[0];
    if (std::find(variables.begin(), variables.end(), sweep.variable) == variables.end())
        throw ValidationError("unknown sweep variable '" + sweep.variable + "'");
    sweep.start = parse_double(parts[1], "sweep start");
    sweep.stop = parse_double(parts[2], "sweep stop");
    sweep.points = parse_count(parts[3], "sweep points");
    if (parts.size() == 5) {
        if (parts[4] == "log")
            sweep.scale = SweepScale::log;
        else if (parts[4] != "linear")
            throw ValidationError("sweep scale must be 'linear' or 'log', got '" + parts[4] + "'");
    }
    if (sweep.points < 1)
        throw ValidationError("sweep needs at least one point");
    if (sweep.points > 1 && !(sweep.start < sweep.stop))
        throw ValidationError("sweep start must be below stop");
    if (sweep.scale == SweepScale::log && !(sweep.start > 0.0))
        throw ValidationError("log sweep needs a positive start");
    return sweep;
}

int cmd_outage_sweep(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out)
{
    SweepSpec sweep{"mu", cfg.scenario.density, cfg.scenario.density, 1};
    if (opts.sweep) {
        require_variable(*opts.sweep, {"mu", "velocity"}, "outage-sweep");
        sweep = *opts.sweep;
    }
    const auto values = sweep.values();
    std::optional<mc::McConfig> mc;
    if (opts.mc_trials)
        mc = mc_config(cfg, opts);

    std::vector<OutageRow> rows(values.size());
    auto evaluate = [&](std::size_t i) {
        auto s = cfg.scenario;
        double velocity = opts.velocity;
        if (sweep.variable == "mu")
            s.density = values[i];
        else
            velocity = values[i];
        s.validate();
        const double position = opts.position.value_or(link::worst_case_position(s));
        auto& row = rows[i];
        row.density = s.density;
        row.analytic = stats::outage_probability(s, position, velocity);
        if (mc)
            row.mc = mc::simulate_outage(s, position, velocity, *mc);
    };
    // with MC the trials of each point are spread over the workers instead
    if (mc) {
        for (std::size_t i = 0; i < values.size(); ++i)
            evaluate(i);
    } else {
        parallel_for(values.size(), workers(cfg, opts), evaluate);
    }

    std::ofstream jsonl;
    if (opts.jsonl && mc) {
        jsonl.open(*opts.jsonl);
        if (!jsonl)
            throw ValidationError("cannot open '" + *opts.jsonl + "' for writing");
    }
    out << "mu,velocity,position,ho_cost,gamma_th,status,p_out";
    if (mc)
        out << ",p_hat,std_err";
    out << '\n';
    for (const auto& row : rows) {
        const auto& a = row.analytic;
        out << num(row.density) << ',' << num(a.velocity) << ',' << num(a.cav_position) << ',' << num(a.ho.capped) << ','
            << opt_num(a.gamma_th) << ',' << stats::to_string(a.status) << ',' << opt_num(a.p_out);
        if (row.mc) {
            out << ',' << num(row.mc->p_hat) << ',' << num(row.mc->std_err);
            if (jsonl.is_open()) {
                json rec = {{"seed", row.mc->seed},     {"trials", row.mc->trials}, {"p_hat", row.mc->p_hat},
                            {"std_err", row.mc->std_err}, {"analytic", nullptr},      {"gap", nullptr}};
                if (a.p_out) {
                    rec["analytic"] = *a.p_out;
                    rec["gap"] = *a.p_out - row.mc->p_hat;
                }
                jsonl << rec.dump() << '\n';
            }
        }
        out << '\n';
    }
    return exit_ok;
}

int cmd_freq_sweep(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out)
{
    const auto& catalog = require_catalog(cfg, "freq-sweep");
    if (!opts.sweep)
        throw ValidationError("freq-sweep needs --sweep frequency:START:STOP:POINTS");
    require_variable(*opts.sweep, {"frequency"}, "freq-sweep");
    const auto values = opts.sweep->values();

    struct Row {
        double k = 0.0;
        opt::DensitySearch search;
    };
    std::vector<Row> rows(values.size());
    parallel_for(values.size(), workers(cfg, opts), [&](std::size_t i) {
        auto s = cfg.scenario;
        s.carrier_frequency = values[i];
        s.absorption = absorption::absorption_coefficient(catalog.lines, cfg.mixture, values[i]).k;
        rows[i].k = s.absorption;
        rows[i].search = opt::optimize_density(s, cfg.search);
        rows[i].search.trace.clear();
    });

    out << "f,k_abs,mu_star,v_data\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& r = rows[i];
        out << num(values[i]) << ',' << num(r.k) << ',';
        if (r.search.feasible)
            out << num(r.search.mu_star) << ',' << num(r.search.v_data_star);
        else
            out << ',';
        out << '\n';
    }
    return exit_ok;
}

int cmd_optimize(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out)
{
    if (opts.sweep) {
        require_variable(*opts.sweep, {"O_th", "epsilon", "R_th"}, "optimize");
        const auto values = opts.sweep->values();
        std::vector<opt::OptimizationResult> results(values.size());
        parallel_for(values.size(), workers(cfg, opts), [&](std::size_t i) {
            auto s = cfg.scenario;
            apply(s, opts.sweep->variable, values[i]);
            results[i] = opt::solve_p1(s, cfg.search);
            results[i].search_trace.clear();
        });
        out << opts.sweep->variable << ",feasible,mu_star,v_star,q_star,v_data,v_safe,v_flow,active,reason\n";
        for (std::size_t i = 0; i < values.size(); ++i) {
            const auto& r = results[i];
            out << num(values[i]) << ',' << (r.feasible ? 1 : 0) << ',';
            if (r.feasible)
                out << num(r.mu_star) << ',' << num(r.v_star) << ',' << num(r.q_star) << ',' << num(r.v_data);
            else
                out << ",,,";
            out << ',' << num(r.v_safe) << ',' << num(r.v_flow) << ',' << opt::to_string(r.active) << ",\""
                << r.reason << "\"\n";
        }
        return exit_ok;
    }

    const auto r = opt::solve_p1(cfg.scenario, cfg.search);
    if (opts.trace) {
        std::ofstream trace(*opts.trace);
        if (!trace)
            throw ValidationError("cannot open '" + *opts.trace + "' for writing");
        trace << "mu,v_data,status\n";
        for (const auto& p : r.search_trace) {
            static constexpr const char* names[] = {"ok", "unachievable", "outage_void", "no_tbs"};
            trace << num(p.density) << ',' << (p.status == opt::VDataStatus::no_tbs ? "" : num(p.speed)) << ','
                  << names[static_cast<int>(p.status)] << '\n';
        }
    }
    out << "feasible: " << (r.feasible ? "yes" : "no") << '\n';
    if (!r.feasible)
        out << "reason: " << r.reason << '\n';
    out << "v_safe: " << num(r.v_safe) << '\n'
        << "v_flow: " << num(r.v_flow) << '\n'
        << "v_max: " << num(r.v_max) << '\n';
    if (!r.feasible)
        return exit_infeasible;
    out << "mu_star: " << num(r.mu_star) << '\n'
        << "v_data: " << num(r.v_data) << '\n'
        << "v_star: " << num(r.v_star) << '\n'
        << "q_star: " << num(r.q_star) << '\n'
        << "active: " << opt::to_string(r.active) << '\n';
    for (const auto& check : r.checks)
        out << check.label << ": value " << num(check.value) << " bound " << num(check.bound) << ' '
            << (check.satisfied ? "ok" : "violated") << '\n';
    return exit_ok;
}

int cmd_validate(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out)
{
    const auto mc = mc_config(cfg, opts);
    const auto& s = cfg.scenario;
    const auto model = stats::sinr_model(s, link::link_geometry(s, link::worst_case_position(s)));

    std::vector<Check> checks;
    checks.push_back(moment_match(model));
    checks.push_back(cdf_quadrature(model));
    checks.push_back(mc_agreement(s, opts.velocity, mc));
    checks.push_back(ratio_law_ks(model, mc));
    checks.push_back(optimizer_dominance(cfg));

    bool all = true;
    for (const auto& c : checks) {
        json rec = {{"check", c.name}, {"pass", c.pass}};
        rec.update(c.detail);
        out << rec.dump() << '\n';
        all = all && c.pass;
    }
    out << json{{"verdict", all ? "pass" : "fail"}}.dump() << '\n';
    return all ? exit_ok : exit_check_failed;
}

int cmd_absorption(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out)
{
    const auto& catalog = require_catalog(cfg, "absorption");
    SweepSpec sweep{"frequency", cfg.scenario.carrier_frequency, cfg.scenario.carrier_frequency, 1};
    if (opts.sweep) {
        require_variable(*opts.sweep, {"frequency"}, "absorption");
        sweep = *opts.sweep;
    }
    out << "f,k_abs\n";
    for (double f : sweep.values())
        out << num(f) << ',' << num(absorption::absorption_coefficient(catalog.lines, cfg.mixture, f).k) << '\n';
    return exit_ok;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"THz corridor outage and traffic-flow toolkit", "thzcav"};
    app.require_subcommand(1);

    struct Raw {
        std::string config;
        std::string sweep;
        std::string mc;
        std::string seed;
        std::string out;
        std::string catalog;
        std::string trace;
        std::string jsonl;
        unsigned workers = 0;
        double velocity = 20.0;
        double position = 0.0;
    } raw;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", raw.config, "Scenario file (default: built-in reference corridor)");
        sub->add_option("--sweep", raw.sweep, "VAR:START:STOP:POINTS[:log]");
        sub->add_option("--seed", raw.seed, "Monte-Carlo seed");
        sub->add_option("--out", raw.out, "Output file (default: stdout)");
        sub->add_option("--catalog", raw.catalog, "Line catalog CSV, overrides the config");
        return sub->add_option("--workers", raw.workers, "Worker threads (0: all cores)");
    };

    std::vector<std::pair<CLI::App*, CLI::Option*>> worker_flags;
    std::vector<std::pair<CLI::App*, CLI::Option*>> position_flags;

    auto* outage = app.add_subcommand("outage-sweep", "Worst-case outage over density or velocity (CSV)");
    worker_flags.emplace_back(outage, add_common(outage));
    outage->add_option("--mc", raw.mc, "Add Monte-Carlo columns with this many trials");
    outage->add_option("--velocity", raw.velocity, "CAV speed [m/s] when sweeping density");
    position_flags.emplace_back(outage, outage->add_option("--position", raw.position, "CAV position [m]"));
    outage->add_option("--jsonl", raw.jsonl, "Write one JSON record per Monte-Carlo run");

    auto* freq = app.add_subcommand("freq-sweep", "Absorption and optimal density over carrier frequency (CSV)");
    worker_flags.emplace_back(freq, add_common(freq));

    auto* optimize = app.add_subcommand("optimize", "Solve the flow maximization (report, or CSV with --sweep)");
    worker_flags.emplace_back(optimize, add_common(optimize));
    optimize->add_option("--trace", raw.trace, "Dump the density search as CSV");

    auto* validate = app.add_subcommand("validate", "Run the invariant checks (JSON lines)");
    worker_flags.emplace_back(validate, add_common(validate));
    validate->add_option("--mc", raw.mc, "Monte-Carlo trials");
    validate->add_option("--velocity", raw.velocity, "CAV speed [m/s] for the Monte-Carlo check");

    auto* absorb = app.add_subcommand("absorption", "Absorption coefficient table k(f) (CSV)");
    worker_flags.emplace_back(absorb, add_common(absorb));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        auto cfg = raw.config.empty() ? [] {
            std::istringstream in(config::reference_config_text());
            return config::parse_config(in);
        }()
                                      : config::load_config(raw.config);
        if (!raw.catalog.empty())
            cfg.catalog = absorption::load_line_catalog(raw.catalog);

        CommandOptions opts;
        if (!raw.sweep.empty())
            opts.sweep = parse_sweep(raw.sweep);
        if (!raw.mc.empty()) {
            opts.mc_trials = parse_count(raw.mc, "--mc");
            if (*opts.mc_trials < 1)
                throw ValidationError("--mc needs at least one trial");
        }
        if (!raw.seed.empty())
            opts.seed = parse_count(raw.seed, "--seed");
        for (const auto& [sub, flag] : worker_flags)
            if (sub->parsed() && flag->count() > 0)
                opts.workers = raw.workers;
        for (const auto& [sub, flag] : position_flags)
            if (sub->parsed() && flag->count() > 0)
                opts.position = raw.position;
        if (!(raw.velocity >= 0.0))
            throw ValidationError("--velocity must be non-negative");
        opts.velocity = raw.velocity;
        if (!raw.trace.empty())
            opts.trace = raw.trace;
        if (!raw.jsonl.empty())
            opts.jsonl = raw.jsonl;

        std::ostringstream buffer;
        int code = exit_ok;
        if (outage->parsed())
            code = cmd_outage_sweep(cfg, opts, buffer);
        else if (freq->parsed())
            code = cmd_freq_sweep(cfg, opts, buffer);
        else if (optimize->parsed())
            code = cmd_optimize(cfg, opts, buffer);
        else if (validate->parsed())
            code = cmd_validate(cfg, opts, buffer);
        else
            code = cmd_absorption(cfg, opts, buffer);

        if (raw.out.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(raw.out, std::ios::binary);
            if (!file)
                throw ValidationError("cannot open '" + raw.out + "' for writing");
            file << buffer.str();
        }
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace thzcav::cli
