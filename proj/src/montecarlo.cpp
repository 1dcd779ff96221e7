#include "thzcav/montecarlo.hpp"

#include <cmath>
#include <limits>

#include "thzcav/errors.hpp"
#include "thzcav/parallel.hpp"
#include "thzcav/special.hpp"

namespace thzcav::mc {

namespace {

// Sum of Gammas sharing one scale: the shapes add. Used to fold the mirror
// pairs of interferers that sit at identical distances.
struct SumGroup {
    double mean_scale;
    GammaSampler sampler;
};

std::vector<SumGroup> coalesce(std::span<const stats::GammaTerm> terms)
{
    std::vector<stats::GammaTerm> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) {
        return l.mean_scale != r.mean_scale ? l.mean_scale < r.mean_scale : l.shape < r.shape;
    });
    std::vector<stats::GammaTerm> merged;
    for (const auto& t : sorted) {
        // mirrored distances can differ in the last few ulps
        if (!merged.empty() && std::fabs(merged.back().mean_scale - t.mean_scale) <= 1e-12 * t.mean_scale) {
            auto& m = merged.back();
            m.mean_scale = (m.mean_scale * m.shape + t.mean_scale * t.shape) / (m.shape + t.shape);
            m.shape += t.shape;
        } else {
            merged.push_back(t);
        }
    }
    std::vector<SumGroup> groups;
    groups.reserve(merged.size());
    for (const auto& t : merged)
        groups.push_back({t.mean_scale, GammaSampler(t.shape)});
    return groups;
}

// Per-trial SINR sampler for one CAV location.
class SinrSampler {
public:
    SinrSampler(const link::CorridorScenario& s, double cav_position, const McConfig& mc)
        : serving_(s.m_serving), m_serving_(s.m_serving), shared_(mc.shared_serving_fade),
          antithetic_(mc.antithetic)
    {
        const auto geometry = link::link_geometry(s, cav_position);
        signal_mean_ = link::mean_signal_power(s, geometry.serving_distance);
        noise_coeff_ = link::absorption_noise_coefficient(s, geometry.serving_distance);
        std::vector<stats::GammaTerm> terms;
        terms.reserve(geometry.interferer_distances.size());
        for (std::size_t i = 0; i < geometry.interferer_distances.size(); ++i) {
            const double b = link::interference_coefficient(s, geometry.interferer_distances[i]);
            if (b > 0.0) {
                const double m = s.interferer_shape(geometry.interferer_indices[i]);
                terms.push_back({b / m, m});
            }
        }
        interferers_ = coalesce(terms);
        floor_ = mc.include_thermal_noise ? s.thermal_noise : 0.0;
    }

    // `trial` is the index inside the block; antithetic pairs are (2i, 2i+1).
    double operator()(RandomStream& rs, std::uint64_t trial)
    {
        double chi;
        if (antithetic_) {
            if (trial % 2 == 0)
                pair_u_ = rs.uniform();
            const double u = trial % 2 == 0 ? pair_u_ : 1.0 - pair_u_;
            chi = special::inv_reg_lower_gamma(std::min(u, 1.0 - 1e-16), m_serving_) / m_serving_;
        } else {
            chi = serving_(rs) / m_serving_;
        }
        const double chi_noise = shared_ ? chi : serving_(rs) / m_serving_;

        double denominator = noise_coeff_ * chi_noise + floor_;
        for (const auto& g : interferers_)
            denominator += g.mean_scale * g.sampler(rs);
        const double numerator = signal_mean_ * chi;
        if (denominator == 0.0)
            return numerator > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        return numerator / denominator;
    }

private:
    GammaSampler serving_;
    double m_serving_;
    bool shared_;
    bool antithetic_;
    double signal_mean_ = 0.0;
    double noise_coeff_ = 0.0;
    double floor_ = 0.0;
    double pair_u_ = 0.0;
    std::vector<SumGroup> interferers_;
};

std::uint64_t block_count(std::uint64_t trials)
{
    return (trials + kBlockSize - 1) / kBlockSize;
}

std::uint64_t block_trials(std::uint64_t trials, std::uint64_t block)
{
    return std::min(kBlockSize, trials - block * kBlockSize);
}

} // namespace

void McConfig::validate() const
{
    if (trials < 1)
        throw ValidationError("Monte-Carlo trials must be at least 1");
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t block)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    engine_.seed(seq);
}

GammaSampler::GammaSampler(double shape) : shape_(shape)
{
    if (!(shape > 0.0) || std::isinf(shape))
        throw DomainError("GammaSampler: shape must be positive and finite");
    boosted_ = shape < 1.0;
    d_ = (boosted_ ? shape + 1.0 : shape) - 1.0 / 3.0;
    c_ = 1.0 / std::sqrt(9.0 * d_);
}

double GammaSampler::operator()(RandomStream& rs) const
{
    while (true) {
        double x;
        double v;
        do {
            x = rs.normal();
            v = 1.0 + c_ * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rs.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d_ * (1.0 - v + std::log(v))) {
            double g = d_ * v;
            if (boosted_)
                g *= std::pow(rs.uniform(), 1.0 / shape_);
            return g;
        }
    }
}

double sample_nakagami_power(double m, RandomStream& rs)
{
    if (!(m >= 0.5))
        throw DomainError("Nakagami shape m must be at least 0.5");
    return GammaSampler(m)(rs) / m;
}

McEstimate simulate_outage(const link::CorridorScenario& s, double cav_position, double velocity,
                           const McConfig& mc)
{
    s.validate();
    mc.validate();
    if (!(velocity >= 0.0))
        throw DomainError("simulate_outage: velocity must be non-negative");

    const auto ho = mobility::ho_cost(s.density, velocity, s.ho_delay);
    if (ho.capped >= 1.0)
        return McEstimate::from_count(mc.trials, mc.trials, mc.seed);

    const SinrSampler prototype(s, cav_position, mc);
    const double rate_threshold = s.traffic.rate_threshold;

    const auto blocks = block_count(mc.trials);
    std::vector<std::uint64_t> hits(blocks, 0);
    parallel_for(blocks, mc.workers, [&](std::size_t b) {
        SinrSampler sampler = prototype;
        RandomStream rs(mc.seed, b);
        std::uint64_t count = 0;
        const auto n = block_trials(mc.trials, b);
        for (std::uint64_t t = 0; t < n; ++t) {
            const double sinr = sampler(rs, t);
            const double m_rate = mobility::ho_aware_rate(link::shannon_rate(s, sinr), ho.capped);
            if (m_rate <= rate_threshold)
                ++count;
        }
        hits[b] = count;
    });

    std::uint64_t total = 0;
    for (auto h : hits)
        total += h;
    return McEstimate::from_count(total, mc.trials, mc.seed);
}

std::vector<double> simulate_sinr_cdf(const link::CorridorScenario& s, double cav_position,
                                      std::span<const double> z_grid, const McConfig& mc)
{
    s.validate();
    mc.validate();
    if (!std::is_sorted(z_grid.begin(), z_grid.end()))
        throw DomainError("simulate_sinr_cdf: grid must be sorted ascending");

    const SinrSampler prototype(s, cav_position, mc);
    const auto blocks = block_count(mc.trials);
    const auto bins = z_grid.size();
    // bucket j counts samples with z_grid[j-1] < sinr <= z_grid[j]
    std::vector<std::vector<std::uint64_t>> counts(blocks, std::vector<std::uint64_t>(bins + 1, 0));
    parallel_for(blocks, mc.workers, [&](std::size_t b) {
        SinrSampler sampler = prototype;
        RandomStream rs(mc.seed, b);
        auto& local = counts[b];
        const auto n = block_trials(mc.trials, b);
        for (std::uint64_t t = 0; t < n; ++t) {
            const double sinr = sampler(rs, t);
            const auto j = static_cast<std::size_t>(std::lower_bound(z_grid.begin(), z_grid.end(), sinr) -
                                                    z_grid.begin());
            ++local[j];
        }
    });

    std::vector<double> cdf(bins, 0.0);
    std::uint64_t running = 0;
    for (std::size_t j = 0; j < bins; ++j) {
        for (const auto& local : counts)
            running += local[j];
        cdf[j] = static_cast<double>(running) / static_cast<double>(mc.trials);
    }
    return cdf;
}

double kolmogorov_bound(std::uint64_t samples)
{
    return 1.63 / std::sqrt(static_cast<double>(samples));
}

std::vector<double> sample_gamma_sum(std::span<const stats::GammaTerm> terms, std::uint64_t n, std::uint64_t seed,
                                     unsigned workers)
{
    const auto groups = coalesce(terms);
    std::vector<double> out(n);
    const auto blocks = block_count(n);
    parallel_for(blocks, workers, [&](std::size_t b) {
        RandomStream rs(seed, b);
        const auto first = b * kBlockSize;
        const auto count = block_trials(n, b);
        for (std::uint64_t t = 0; t < count; ++t) {
            double x = 0.0;
            for (const auto& g : groups)
                x += g.mean_scale * g.sampler(rs);
            out[first + t] = x;
        }
    });
    return out;
}

GapReport ws_approximation_gap(std::span<const stats::GammaTerm> terms, const McConfig& mc)
{
    mc.validate();
    GapReport report;
    report.approx = stats::welch_satterthwaite(terms);
    auto samples = sample_gamma_sum(terms, mc.trials, mc.seed, mc.workers);
    std::sort(samples.begin(), samples.end());
    const auto& g = report.approx;
    report.sup_distance =
        ks_distance(samples, [&](double x) { return special::reg_lower_gamma(g.shape, g.rate * x); });
    report.sampling_bound = kolmogorov_bound(mc.trials);
    report.samples = mc.trials;
    return report;
}

} // namespace thzcav::mc
