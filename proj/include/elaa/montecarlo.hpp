#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "elaa/analytics.hpp"
#include "elaa/beamforming.hpp"
#include "elaa/channel.hpp"
#include "elaa/geometry.hpp"

namespace elaa {

struct EmpiricalStat {
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
    double std_error = 0.0;  // sqrt(variance / count)
    std::size_t count = 0;
};

/// Single-pass mean/variance (Welford) with the pairwise merge of Chan et al.
class MomentAccumulator {
public:
    void add(double x) noexcept;
    void merge(const MomentAccumulator& other) noexcept;

    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    EmpiricalStat stat() const noexcept;

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct Scenario {
    UserLocation user;
    ClusterSelection cluster;
    ChannelParams params;
    LinkBudget budget;
};

/// Builds the scenario for a user served by its nearest-L cluster.
Scenario make_scenario(const UserLocation& user, std::size_t cluster_size, const ArrayConfig& cfg,
                       const ChannelParams& params, const LinkBudget& budget = {});

struct TrialPlan {
    std::size_t trials = 100000;
    std::uint64_t master_seed = 1;
    Scenario scenario;
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Trials are processed in fixed blocks of this size and the per-block
/// accumulators are merged in block order, so every statistic is a pure
/// function of the plan whatever the thread count.
inline constexpr std::size_t kTrialBlock = 1024;

/// Sample statistics of beta_bar = |h^T w|^2 / M over the plan's trials,
/// using the exact gain (no truncation of the |b|^2 term).
EmpiricalStat empirical_gain(const TrialPlan& plan);

struct OutageEstimate {
    double beta_top = 0.0;
    double probability = 0.0;
    double std_error = 0.0;  // binomial
    std::size_t trials = 0;
};

/// Fraction of trials with beta_bar < beta_top.
OutageEstimate empirical_outage(const TrialPlan& plan, double beta_top);

/// Several thresholds from one pass over the same trials.
std::vector<OutageEstimate> empirical_outage(const TrialPlan& plan,
                                             std::span<const double> thresholds);

/// Empirical iSNR for M elements with stationary attenuation
/// alpha_0 = 1/sqrt(M) (so M * alpha_0^2 = 1). Only trials, seed and threads
/// are taken from the plan.
EmpiricalStat stationary_isnr(std::size_t element_count, const RicianFactor& rician_k, double snr,
                             const TrialPlan& plan);

}  // namespace elaa
