#pragma once

// Traffic-side quantities: log-normal headway law, macroscopic flow, handoff
// cost and the rate/SINR threshold it induces.

#include <optional>

namespace thzcav::mobility {

struct TrafficParams {
    double log_mean = 0.0;        // mu_LN [ln m]
    double log_scatter = 1.0;     // sigma_LN
    double decision_time = 5e-3;  // tau [s]
    double crash_level = 0.02;    // epsilon, a fraction
    double min_flow = 10.0;       // Q_min [CAV/s]
    double max_speed = 30.0;      // V_max [m/s]
    double rate_threshold = 1e9;  // R_th [bit/s]
    double outage_cap = 0.1;      // O_th

    void validate() const;
};

/// Log-normal density of inter-vehicle spacing s > 0.
double spacing_pdf(double s, const TrafficParams& params);
double spacing_cdf(double s, const TrafficParams& params);

/// Mean flow Q = v exp((sigma^2 - 2 mu) / 2) [CAV/s].
double traffic_flow(double v, const TrafficParams& params);

struct HoCost {
    double demand = 0.0;  // H_d = h_d mu v
    double capped = 0.0;  // H_c,max = min(H_d, 1)
};

HoCost ho_cost(double density, double v, double ho_delay);

/// HO-aware rate M = R (1 - H_c,max).
double ho_aware_rate(double rate, double capped_cost);

/// SINR threshold 2^(R_th / (W (1 - H_c,max))) - 1. Empty when H_c,max = 1:
/// nothing can be carried and every threshold is missed.
std::optional<double> gamma_threshold(double rate_threshold, double bandwidth, double capped_cost);

/// Largest speed with Pr(s <= v tau) <= epsilon (C1).
double v_safe(const TrafficParams& params);

/// Smallest speed whose flow reaches Q_min (C2).
double v_flow(const TrafficParams& params);

} // namespace thzcav::mobility
