#pragma once

// Batch front-end. Every command reads a scenario (--config, or the built-in
// reference corridor), writes CSV / JSON-lines / plain text to --out or stdout,
// and returns one of the exit codes below.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thzcav/config.hpp"

namespace thzcav::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_infeasible = 2,
    exit_check_failed = 3,
};

enum class SweepScale { linear, log };

struct SweepSpec {
    std::string variable;  // mu, velocity, frequency, O_th, epsilon, R_th
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 0;
    SweepScale scale = SweepScale::linear;

    std::vector<double> values() const;
};

/// VAR:START:STOP:POINTS[:log]. One point yields just START.
SweepSpec parse_sweep(std::string_view text);

struct CommandOptions {
    std::optional<SweepSpec> sweep;
    std::optional<std::uint64_t> mc_trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    double velocity = 20.0;
    std::optional<double> position;       // CAV position; default is the worst case per density
    std::optional<std::string> trace;     // optimize: CSV dump of the density search
    std::optional<std::string> jsonl;     // outage-sweep: JSON-lines record per MC run
};

int cmd_outage_sweep(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out);
int cmd_freq_sweep(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out);
int cmd_optimize(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out);
int cmd_validate(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out);
int cmd_absorption(const config::ScenarioConfig& cfg, const CommandOptions& opts, std::ostream& out);

/// Full command line without the program name, e.g. {"optimize", "--config", "a.ini"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace thzcav::cli
