#include "thzcav/statistics.hpp"

#include <cmath>
#include <limits>

#include "thzcav/errors.hpp"
#include "thzcav/special.hpp"

namespace thzcav::stats {

GammaApprox welch_satterthwaite(std::span<const GammaTerm> terms)
{
    if (terms.empty())
        throw DomainError("no interference terms; use exact single-Gamma path");
    double mean = 0.0;
    double variance = 0.0;
    for (const auto& t : terms) {
        if (!(t.mean_scale > 0.0) || !(t.shape > 0.0) || std::isinf(t.mean_scale) || std::isinf(t.shape))
            throw DomainError("welch_satterthwaite: scales and shapes must be positive and finite");
        mean += t.shape * t.mean_scale;
        variance += t.shape * t.mean_scale * t.mean_scale;
    }
    const double rate = mean / variance;
    return {mean * rate, rate, mean, variance};
}

void BetaPrimeParams::validate() const
{
    if (!(a > 0.0) || !(b > 0.0) || !(scale > 0.0) || std::isinf(a) || std::isinf(b) || std::isinf(scale))
        throw DomainError("Beta-prime parameters must be positive and finite");
}

double sinr_pdf(double z, const BetaPrimeParams& params)
{
    params.validate();
    if (!(z >= 0.0))
        throw DomainError("sinr_pdf: z must be non-negative");
    if (std::isinf(z))
        return 0.0;
    if (z == 0.0) {
        if (params.a < 1.0)
            throw DomainError("sinr_pdf: density is unbounded at z = 0 when m_j < 1");
        return params.a == 1.0 ? 1.0 / (params.scale * std::exp(special::log_beta(params.a, params.b))) : 0.0;
    }
    const double r = z / params.scale;
    return std::exp(-std::log(params.scale) + (params.a - 1.0) * std::log(r) -
                    (params.a + params.b) * std::log1p(r) - special::log_beta(params.a, params.b));
}

double sinr_cdf(double z, const BetaPrimeParams& params)
{
    params.validate();
    if (!(z >= 0.0))
        throw DomainError("sinr_cdf: z must be non-negative");
    if (z == 0.0)
        return 0.0;
    if (std::isinf(z))
        return 1.0;
    // evaluate through whichever of z/(z+s), s/(z+s) is farther from 1
    if (z <= params.scale)
        return special::reg_inc_beta(z / (z + params.scale), params.a, params.b);
    return 1.0 - special::reg_inc_beta(params.scale / (z + params.scale), params.b, params.a);
}

double sinr_quantile(double u, const BetaPrimeParams& params)
{
    params.validate();
    if (!(u >= 0.0 && u < 1.0))
        throw DomainError("sinr_quantile: probability must lie in [0, 1)");
    const double x = special::inv_reg_inc_beta(u, params.a, params.b);
    if (x >= 1.0)
        return std::numeric_limits<double>::max();
    return params.scale * x / (1.0 - x);
}

SinrModel sinr_model(const link::CorridorScenario& s, const link::LinkGeometry& geometry)
{
    SinrModel model;
    model.signal_mean = link::mean_signal_power(s, geometry.serving_distance);
    if (!(model.signal_mean > 0.0))
        throw DomainError("serving signal power underflows to zero");
    model.signal = {s.m_serving, s.m_serving / model.signal_mean};

    model.noise_terms.reserve(geometry.interferer_distances.size() + 1);
    for (std::size_t i = 0; i < geometry.interferer_distances.size(); ++i) {
        const double b = link::interference_coefficient(s, geometry.interferer_distances[i]);
        if (b > 0.0) {
            const double m = s.interferer_shape(geometry.interferer_indices[i]);
            model.noise_terms.push_back({b / m, m});
        }
    }
    const double b_noise = link::absorption_noise_coefficient(s, geometry.serving_distance);
    if (b_noise > 0.0)
        model.noise_terms.push_back({b_noise / s.m_serving, s.m_serving});

    if (!model.noise_terms.empty()) {
        model.noise = welch_satterthwaite(model.noise_terms);
        model.law = BetaPrimeParams{s.m_serving, model.noise->shape, model.noise->rate / model.signal.rate};
    }
    return model;
}

OutageResult outage_probability(const link::CorridorScenario& s, double cav_position, double velocity)
{
    s.validate();
    if (!(velocity >= 0.0))
        throw DomainError("outage_probability: velocity must be non-negative");

    OutageResult out;
    out.cav_position = cav_position;
    out.velocity = velocity;
    out.ho = mobility::ho_cost(s.density, velocity, s.ho_delay);
    out.gamma_th = mobility::gamma_threshold(s.traffic.rate_threshold, s.bandwidth, out.ho.capped);
    if (!out.gamma_th) {
        out.status = OutageStatus::no_transmission;
        out.p_out = 1.0;
        return out;
    }

    const auto model = sinr_model(s, link::link_geometry(s, cav_position));
    out.noise = model.noise;
    out.law = model.law;
    if (!model.law) {
        out.status = OutageStatus::degenerate;
        return out;
    }
    out.p_out = sinr_cdf(*out.gamma_th, *model.law);
    return out;
}

OutageResult worst_case_outage(const link::CorridorScenario& s, double velocity)
{
    s.validate();
    return outage_probability(s, link::worst_case_position(s), velocity);
}

const char* to_string(OutageStatus status)
{
    switch (status) {
    case OutageStatus::ok:
        return "ok";
    case OutageStatus::no_transmission:
        return "no_transmission";
    case OutageStatus::degenerate:
        return "degenerate";
    }
    return "unknown";
}

} // namespace thzcav::stats
