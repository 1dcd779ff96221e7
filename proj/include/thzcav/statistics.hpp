#pragma once

// SINR statistics of the serving link. The serving power is a scaled Gamma
// variable; interference plus molecular absorption noise is a weighted sum of
// independent Gammas, collapsed to one Gamma by matching its first two moments.
// Their ratio then follows a generalized Beta-prime law, whose CDF at the SINR
// threshold is the rate outage.

#include <optional>
#include <span>
#include <vector>

#include "thzcav/estimate.hpp"
#include "thzcav/link.hpp"
#include "thzcav/mobility.hpp"

namespace thzcav::stats {

/// Gamma law with density rate^shape x^(shape-1) e^(-rate x) / Gamma(shape).
struct GammaRV {
    double shape = 1.0;
    double rate = 1.0;

    double mean() const { return shape / rate; }
    double variance() const { return shape / (rate * rate); }
};

/// One summand mean_scale * Gamma(shape, 1) of an interference sum; for a link
/// with power coefficient b and Nakagami shape m, mean_scale = b / m.
struct GammaTerm {
    double mean_scale = 0.0;
    double shape = 0.0;
};

/// Single-Gamma surrogate of a Gamma sum. shape / rate equals `mean` and
/// shape / rate^2 equals `variance`, the exact moments of the sum.
struct GammaApprox {
    double shape = 0.0;  // p
    double rate = 0.0;   // beta_2
    double mean = 0.0;
    double variance = 0.0;
};

GammaApprox welch_satterthwaite(std::span<const GammaTerm> terms);

/// Law of Y / X for Y ~ Gamma(a, beta_1), X ~ Gamma(b, beta_2): scale = beta_2 / beta_1.
struct BetaPrimeParams {
    double a = 1.0;
    double b = 1.0;
    double scale = 1.0;

    void validate() const;
};

double sinr_pdf(double z, const BetaPrimeParams& params);
double sinr_cdf(double z, const BetaPrimeParams& params);
/// Inverse of sinr_cdf; u in [0, 1).
double sinr_quantile(double u, const BetaPrimeParams& params);

/// Everything the closed form needs about one CAV location.
struct SinrModel {
    double signal_mean = 0.0;  // a_ij
    GammaRV signal;            // shape m_j, rate beta_1 = m_j / a_ij
    // Interferers in geometry order, then the absorption-noise term; terms
    // with zero power are left out.
    std::vector<GammaTerm> noise_terms;
    std::optional<GammaApprox> noise;     // empty: no denominator mass
    std::optional<BetaPrimeParams> law;   // empty together with `noise`
};

SinrModel sinr_model(const link::CorridorScenario& s, const link::LinkGeometry& geometry);

enum class OutageStatus {
    ok,
    no_transmission,  // H_c,max = 1: outage is certain
    degenerate,       // no interference or absorption noise; the closed form is undefined
};

struct OutageResult {
    OutageStatus status = OutageStatus::ok;
    double cav_position = 0.0;
    double velocity = 0.0;
    mobility::HoCost ho;
    std::optional<double> gamma_th;  // empty with no_transmission
    std::optional<GammaApprox> noise;
    std::optional<BetaPrimeParams> law;
    std::optional<double> p_out;     // empty when degenerate
    std::optional<McEstimate> mc;
};

OutageResult outage_probability(const link::CorridorScenario& s, double cav_position, double velocity);

/// Outage with the CAV on the cell edge nearest the corridor centre.
OutageResult worst_case_outage(const link::CorridorScenario& s, double velocity);

const char* to_string(OutageStatus status);

} // namespace thzcav::stats
