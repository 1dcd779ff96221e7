#include "thzcav/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thzcav/errors.hpp"
#include "thzcav/mobility.hpp"
#include "thzcav/special.hpp"
#include "thzcav/statistics.hpp"

namespace thzcav::opt {

namespace {

constexpr double kCheckSlack = 1e-9;

double worst_case_at(link::CorridorScenario s, double density, double velocity)
{
    s.density = density;
    const auto r = stats::worst_case_outage(s, velocity);
    return r.p_out.value_or(0.0);
}

} // namespace

VDataPoint v_data(double density, const link::CorridorScenario& s)
{
    if (!(density > 0.0))
        throw DomainError("v_data: density must be positive");
    if (!(s.ho_delay > 0.0))
        throw DomainError("v_data: HO delay must be positive");

    VDataPoint point;
    point.density = density;
    if (!(density * s.length >= 1.0)) {
        point.status = VDataStatus::no_tbs;
        return point;
    }

    auto local = s;
    local.density = density;
    const double ho_limit = 1.0 / (s.ho_delay * density);
    const auto model = stats::sinr_model(local, link::link_geometry(local, link::worst_case_position(local)));
    if (!model.law) {
        // no interference or noise mass: SINR is unbounded, the cap never binds
        point.status = VDataStatus::outage_void;
        point.speed = ho_limit;
        point.sinr_target = std::numeric_limits<double>::max();
        return point;
    }

    const auto& law = *model.law;
    const double a = special::inv_reg_inc_beta(s.traffic.outage_cap, law.a, law.b);
    if (a >= 1.0) {
        point.status = VDataStatus::outage_void;
        point.speed = ho_limit;
        point.sinr_target = std::numeric_limits<double>::max();
        return point;
    }
    point.sinr_target = law.scale * a / (1.0 - a);
    const double capacity = s.bandwidth * std::log2(1.0 + point.sinr_target);
    if (!(capacity > 0.0)) {
        point.status = VDataStatus::unachievable;
        point.speed = -std::numeric_limits<double>::max();
        return point;
    }
    const double usable = 1.0 - s.traffic.rate_threshold / capacity;
    point.speed = usable * ho_limit;
    point.status = usable > 0.0 ? VDataStatus::ok : VDataStatus::unachievable;
    return point;
}

ScalarMaximum grid_golden_maximize(const std::function<std::optional<double>(double)>& f, double hi,
                                   const ScalarSearch& search)
{
    if (!(hi > 0.0))
        throw DomainError("grid_golden_maximize: upper bound must be positive");
    if (search.grid_points < 2)
        throw DomainError("grid_golden_maximize: at least two grid points are required");

    ScalarMaximum best;
    auto evaluate = [&](double x) {
        const auto v = f(x);
        const double value = v.value_or(-std::numeric_limits<double>::infinity());
        best.trace.emplace_back(x, value);
        if (v && (!best.found || *v > best.value)) {
            best.found = true;
            best.argmax = x;
            best.value = *v;
        }
        return value;
    };

    const auto n = search.grid_points;
    std::size_t best_index = 0;
    double best_grid = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= n; ++i) {
        const double v = evaluate(hi * static_cast<double>(i) / static_cast<double>(n));
        if (v > best_grid) {
            best_grid = v;
            best_index = i;
        }
    }
    if (!best.found)
        return best;

    double lo = hi * static_cast<double>(best_index - 1) / static_cast<double>(n);
    double up = hi * static_cast<double>(std::min(best_index + 1, n)) / static_cast<double>(n);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = up - ratio * (up - lo);
    double d = lo + ratio * (up - lo);
    double fc = evaluate(c);
    double fd = evaluate(d);
    while (up - lo > search.tolerance) {
        if (fc > fd) {
            up = d;
            d = c;
            fd = fc;
            c = up - ratio * (up - lo);
            fc = evaluate(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (up - lo);
            fd = evaluate(d);
        }
    }
    return best;
}

DensitySearch optimize_density(const link::CorridorScenario& s, const ScalarSearch& search)
{
    s.validate();
    DensitySearch out;
    auto objective = [&](double mu) -> std::optional<double> {
        auto point = v_data(mu, s);
        out.trace.push_back(point);
        if (!point.feasible())
            return std::nullopt;
        return point.speed;
    };
    const auto best = grid_golden_maximize(objective, s.density_max, search);
    out.feasible = best.found;
    if (best.found) {
        out.mu_star = best.argmax;
        out.v_data_star = best.value;
    }
    return out;
}

const char* to_string(ActiveConstraint c)
{
    switch (c) {
    case ActiveConstraint::data:
        return "data";
    case ActiveConstraint::safe:
        return "safe";
    case ActiveConstraint::max:
        return "max";
    case ActiveConstraint::infeasible:
        return "infeasible";
    }
    return "unknown";
}

VelocityChoice optimal_velocity(double v_data, double v_safe, double v_flow, double v_max)
{
    const double cap = std::min(v_max, v_safe);
    if (!(v_data > 0.0) || !(cap > 0.0))
        return {};
    const double v = std::min(v_data, cap);
    if (v < v_flow)
        return {};
    if (v_data < cap)
        return {v, ActiveConstraint::data};
    return {v, v_safe <= v_max ? ActiveConstraint::safe : ActiveConstraint::max};
}

OptimizationResult solve_p1(const link::CorridorScenario& s, const ScalarSearch& search)
{
    s.validate();
    OptimizationResult out;
    out.v_safe = mobility::v_safe(s.traffic);
    out.v_flow = mobility::v_flow(s.traffic);
    out.v_max = s.traffic.max_speed;

    if (out.v_flow > std::min(out.v_max, out.v_safe)) {
        out.reason = "C2 infeasible: V_flow exceeds min(V_max, V_safe)";
        return out;
    }

    auto density = optimize_density(s, search);
    out.search_trace = std::move(density.trace);
    if (!density.feasible) {
        out.reason = "C3 infeasible: outage cap unachievable at every density";
        return out;
    }
    out.mu_star = density.mu_star;
    out.v_data = density.v_data_star;

    const auto choice = optimal_velocity(out.v_data, out.v_safe, out.v_flow, out.v_max);
    if (choice.active == ActiveConstraint::infeasible) {
        out.reason = "C2 infeasible: V_data below V_flow";
        return out;
    }
    out.feasible = true;
    out.v_star = choice.v_star;
    out.active = choice.active;
    out.q_star = mobility::traffic_flow(out.v_star, s.traffic);

    const double outage = worst_case_at(s, out.mu_star, out.v_star);
    out.checks = {
        {"C1", out.v_star, out.v_safe, out.v_star <= out.v_safe + kCheckSlack},
        {"C2", out.v_star, out.v_flow, out.v_star >= out.v_flow - kCheckSlack},
        {"C3", outage, s.traffic.outage_cap, outage <= s.traffic.outage_cap + kCheckSlack},
        {"C4", out.v_star, out.v_max, out.v_star > 0.0 && out.v_star <= out.v_max + kCheckSlack},
        {"C5", out.mu_star, s.density_max, out.mu_star >= 0.0 && out.mu_star <= s.density_max},
    };
    return out;
}

} // namespace thzcav::opt
