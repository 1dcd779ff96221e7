#include "thzcav/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thzcav/errors.hpp"
#include "thzcav/special.hpp"

namespace thzcav::mobility {

void TrafficParams::validate() const
{
    if (!std::isfinite(log_mean))
        throw ValidationError("traffic: mu_LN must be finite");
    if (!(log_scatter > 0.0))
        throw ValidationError("traffic: sigma_LN must be positive");
    if (!(decision_time > 0.0))
        throw ValidationError("traffic: tau must be positive");
    if (!(crash_level > 0.0 && crash_level < 1.0))
        throw ValidationError("traffic: epsilon must lie in (0, 1)");
    if (!(min_flow >= 0.0))
        throw ValidationError("traffic: Q_min must be non-negative");
    if (!(max_speed > 0.0))
        throw ValidationError("traffic: V_max must be positive");
    if (!(rate_threshold >= 0.0))
        throw ValidationError("traffic: R_th must be non-negative");
    if (!(outage_cap > 0.0 && outage_cap < 1.0))
        throw ValidationError("traffic: O_th must lie in (0, 1)");
}

double spacing_pdf(double s, const TrafficParams& params)
{
    if (!(s > 0.0))
        throw DomainError("spacing_pdf: spacing must be positive");
    const double sigma = params.log_scatter;
    const double z = (std::log(s) - params.log_mean) / sigma;
    return std::exp(-0.5 * z * z) / (s * sigma * std::sqrt(2.0 * std::numbers::pi));
}

double spacing_cdf(double s, const TrafficParams& params)
{
    if (s <= 0.0)
        return 0.0;
    return 0.5 * std::erfc(-(std::log(s) - params.log_mean) / (params.log_scatter * std::numbers::sqrt2));
}

double traffic_flow(double v, const TrafficParams& params)
{
    if (!(v >= 0.0))
        throw DomainError("traffic_flow: speed must be non-negative");
    const double sigma = params.log_scatter;
    return v * std::exp((sigma * sigma - 2.0 * params.log_mean) / 2.0);
}

HoCost ho_cost(double density, double v, double ho_delay)
{
    if (!(density >= 0.0) || !(v >= 0.0) || !(ho_delay >= 0.0))
        throw DomainError("ho_cost: density, speed and HO delay must be non-negative");
    const double demand = ho_delay * density * v;
    return {demand, std::min(demand, 1.0)};
}

double ho_aware_rate(double rate, double capped_cost)
{
    if (!(rate >= 0.0))
        throw DomainError("ho_aware_rate: rate must be non-negative");
    if (!(capped_cost >= 0.0 && capped_cost <= 1.0))
        throw DomainError("ho_aware_rate: HO cost must lie in [0, 1]");
    return rate * (1.0 - capped_cost);
}

std::optional<double> gamma_threshold(double rate_threshold, double bandwidth, double capped_cost)
{
    if (!(bandwidth > 0.0))
        throw DomainError("gamma_threshold: bandwidth must be positive");
    if (!(capped_cost >= 0.0 && capped_cost <= 1.0))
        throw DomainError("gamma_threshold: HO cost must lie in [0, 1]");
    if (!(rate_threshold >= 0.0))
        throw DomainError("gamma_threshold: rate threshold must be non-negative");
    if (capped_cost >= 1.0)
        return std::nullopt;
    // expm1 keeps precision for small exponents
    return std::expm1(std::numbers::ln2 * rate_threshold / (bandwidth * (1.0 - capped_cost)));
}

double v_safe(const TrafficParams& params)
{
    params.validate();
    const double z = std::numbers::sqrt2 * special::inv_erf(2.0 * params.crash_level - 1.0);
    return std::exp(params.log_scatter * z + params.log_mean) / params.decision_time;
}

double v_flow(const TrafficParams& params)
{
    params.validate();
    const double sigma = params.log_scatter;
    return params.min_flow / std::exp((sigma * sigma - 2.0 * params.log_mean) / 2.0);
}

} // namespace thzcav::mobility
