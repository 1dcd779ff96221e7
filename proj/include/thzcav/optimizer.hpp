#pragma once

// Traffic-flow maximization over TBS density and CAV speed. Flow grows
// linearly in speed, so the problem reduces to maximizing the outage-limited
// speed V_data(mu) over density, then clipping it against the speed limit,
// the collision-avoidance speed and the minimum-flow speed.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thzcav/link.hpp"

namespace thzcav::opt {

enum class VDataStatus {
    ok,
    unachievable,  // the outage cap cannot be met at any speed; `speed` <= 0
    outage_void,   // the cap holds at every SINR; speed is the H_d = 1 limit
    no_tbs,        // mu L < 1
};

struct VDataPoint {
    double density = 0.0;
    double speed = 0.0;  // V_data [m/s]
    VDataStatus status = VDataStatus::ok;
    double sinr_target = 0.0;  // SINR at which the worst-case CDF equals O_th

    bool feasible() const { return status == VDataStatus::ok || status == VDataStatus::outage_void; }
};

/// Largest speed at which the worst-case outage at density mu equals O_th.
VDataPoint v_data(double density, const link::CorridorScenario& s);

struct ScalarSearch {
    std::size_t grid_points = 256;
    double tolerance = 1e-6;
};

struct ScalarMaximum {
    bool found = false;
    double argmax = 0.0;
    double value = 0.0;
    std::vector<std::pair<double, double>> trace;  // every (x, f(x)) evaluated, in order
};

/// Maximizes f over (0, hi]: uniform grid scan x_i = hi i / n, then golden-section
/// refinement inside the bracket around the best grid point. Points where f is
/// empty are infeasible.
ScalarMaximum grid_golden_maximize(const std::function<std::optional<double>(double)>& f, double hi,
                                   const ScalarSearch& search = {});

struct DensitySearch {
    bool feasible = false;
    double mu_star = 0.0;
    double v_data_star = 0.0;
    std::vector<VDataPoint> trace;
};

DensitySearch optimize_density(const link::CorridorScenario& s, const ScalarSearch& search = {});

enum class ActiveConstraint { data, safe, max, infeasible };

const char* to_string(ActiveConstraint c);

struct VelocityChoice {
    double v_star = 0.0;
    ActiveConstraint active = ActiveConstraint::infeasible;
};

/// Speed selection given the four speed bounds. A non-positive v_data marks an
/// unachievable outage cap. Ties resolve to min(v_data, v_max, v_safe) when that
/// still reaches v_flow.
VelocityChoice optimal_velocity(double v_data, double v_safe, double v_flow, double v_max);

struct ConstraintCheck {
    std::string label;  // C1..C5
    double value = 0.0;
    double bound = 0.0;
    bool satisfied = false;
};

struct OptimizationResult {
    bool feasible = false;
    std::string reason;  // set when infeasible
    double mu_star = 0.0;
    double v_star = 0.0;
    double q_star = 0.0;
    double v_data = 0.0;
    double v_safe = 0.0;
    double v_flow = 0.0;
    double v_max = 0.0;
    ActiveConstraint active = ActiveConstraint::infeasible;
    std::vector<ConstraintCheck> checks;  // re-evaluated at the returned point
    std::vector<VDataPoint> search_trace;
};

OptimizationResult solve_p1(const link::CorridorScenario& s, const ScalarSearch& search = {});

} // namespace thzcav::opt
