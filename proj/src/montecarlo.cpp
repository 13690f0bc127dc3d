#include "elaa/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elaa/parallel.hpp"

namespace elaa {

void MomentAccumulator::add(double x) noexcept
{
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) noexcept
{
    if (other.count_ == 0) {
        return;
    }
    if (count_ == 0) {
        *this = other;
        return;
    }
    const auto na = static_cast<double>(count_);
    const auto nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    count_ += other.count_;
}

EmpiricalStat MomentAccumulator::stat() const noexcept
{
    EmpiricalStat s;
    s.count = count_;
    s.mean = mean_;
    s.variance = count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    s.std_error = count_ > 0 ? std::sqrt(s.variance / static_cast<double>(count_)) : 0.0;
    return s;
}

Scenario make_scenario(const UserLocation& user, std::size_t cluster_size, const ArrayConfig& cfg,
                       const ChannelParams& params, const LinkBudget& budget)
{
    return {user, select_cluster(user, cluster_size, cfg), params, budget};
}

namespace {

void validate_plan(const TrialPlan& plan)
{
    if (plan.trials < 1) {
        throw std::invalid_argument("trial plan needs at least one trial");
    }
}

// Runs every trial of the plan through `sink(block_state, beta_bar)`; one sink
// state per fixed-size block, returned in block order.
template <class Sink>
std::vector<Sink> run_gain_trials(const ChannelSampler& sampler, const BeamWeights& beam,
                                  const TrialPlan& plan, const Sink& prototype)
{
    validate_plan(plan);
    const std::size_t blocks = (plan.trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<Sink> sinks(blocks, prototype);
    parallel_for(blocks, plan.threads, [&](std::size_t b) {
        ChannelRealization h;
        const std::size_t begin = b * kTrialBlock;
        const std::size_t end = std::min(plan.trials, begin + kTrialBlock);
        for (std::size_t t = begin; t < end; ++t) {
            sampler.draw(plan.master_seed, t, h);
            sinks[b].add(normalized_gain(instantaneous_gain(h, beam), h.size()));
        }
    });
    return sinks;
}

struct ThresholdCounter {
    std::vector<double> thresholds;
    std::vector<std::size_t> below;
    std::size_t total = 0;

    void add(double value)
    {
        ++total;
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            if (value < thresholds[i]) {
                ++below[i];
            }
        }
    }
};

}  // namespace

EmpiricalStat empirical_gain(const TrialPlan& plan)
{
    const auto& s = plan.scenario;
    const ChannelSampler sampler(s.cluster, s.user, s.params);
    const auto beam = los_beamformer(s.cluster, s.user, s.cluster.wavelength);
    MomentAccumulator total;
    for (const auto& acc : run_gain_trials(sampler, beam, plan, MomentAccumulator{})) {
        total.merge(acc);
    }
    return total.stat();
}

std::vector<OutageEstimate> empirical_outage(const TrialPlan& plan,
                                             std::span<const double> thresholds)
{
    const auto& s = plan.scenario;
    const ChannelSampler sampler(s.cluster, s.user, s.params);
    const auto beam = los_beamformer(s.cluster, s.user, s.cluster.wavelength);

    ThresholdCounter prototype;
    prototype.thresholds.assign(thresholds.begin(), thresholds.end());
    prototype.below.assign(thresholds.size(), 0);

    std::vector<std::size_t> below(thresholds.size(), 0);
    std::size_t total = 0;
    for (const auto& block : run_gain_trials(sampler, beam, plan, prototype)) {
        total += block.total;
        for (std::size_t i = 0; i < below.size(); ++i) {
            below[i] += block.below[i];
        }
    }

    std::vector<OutageEstimate> out;
    out.reserve(thresholds.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double n = static_cast<double>(total);
        const double p = static_cast<double>(below[i]) / n;
        out.push_back({thresholds[i], p, std::sqrt(p * (1.0 - p) / n), total});
    }
    return out;
}

OutageEstimate empirical_outage(const TrialPlan& plan, double beta_top)
{
    const double thresholds[] = {beta_top};
    return empirical_outage(plan, thresholds).front();
}

EmpiricalStat stationary_isnr(std::size_t element_count, const RicianFactor& rician_k, double snr,
                             const TrialPlan& plan)
{
    if (element_count < 1) {
        throw std::invalid_argument("stationary_isnr: element count must be at least 1");
    }
    // The phases cancel against the LoS beam; a half-wavelength ULA seen
    // from a nearby user gives them a realistic spread.
    const double wavelength =
        plan.scenario.cluster.wavelength > 0.0 ? plan.scenario.cluster.wavelength : ArrayConfig{}.wavelength;
    const UserLocation user{0.0, 1.0};
    std::vector<Complex> phases(element_count);
    for (std::size_t m = 0; m < element_count; ++m) {
        const double x = (static_cast<double>(m) - static_cast<double>(element_count - 1) / 2.0) *
                         wavelength / 2.0;
        phases[m] = steering_phase(element_distance(x, user), wavelength);
    }
    const double alpha0 = 1.0 / std::sqrt(static_cast<double>(element_count));
    const ChannelSampler sampler(std::vector<double>(element_count, alpha0), phases, rician_k);
    const auto beam = conjugate_beam(phases);

    MomentAccumulator total;
    for (const auto& acc : run_gain_trials(sampler, beam, plan, MomentAccumulator{})) {
        total.merge(acc);
    }
    // iSNR is linear in beta_bar; rescale the moments.
    auto stat = total.stat();
    stat.mean *= snr;
    stat.variance *= snr * snr;
    stat.std_error *= snr;
    return stat;
}

}  // namespace elaa
