#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "elaa/montecarlo.hpp"
#include "elaa/optimizer.hpp"

using namespace elaa;

namespace {

ChannelParams channel(double kappa)
{
    ChannelParams p;
    p.rician_k = std::isinf(kappa) ? RicianFactor::infinite() : RicianFactor(kappa);
    return p;
}

TrialPlan plan_for(double kappa, std::size_t L, std::size_t per_ap, double y, std::size_t trials,
                   std::uint64_t seed = 5)
{
    ArrayConfig cfg;
    cfg.antennas_per_ap = per_ap;
    TrialPlan plan;
    plan.trials = trials;
    plan.master_seed = seed;
    plan.scenario = make_scenario({0.0, y}, L, cfg, channel(kappa));
    return plan;
}

}  // namespace

TEST_CASE("moment accumulator merge is order-insensitive")
{
    std::mt19937_64 gen(1);
    std::normal_distribution<double> dist(3.0, 2.0);
    std::vector<double> xs(1000);
    for (auto& x : xs) {
        x = dist(gen);
    }
    MomentAccumulator all, a, b;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        all.add(xs[i]);
        (i < 377 ? a : b).add(xs[i]);
    }
    auto ab = a;
    ab.merge(b);
    auto ba = b;
    ba.merge(a);
    CHECK(ab.stat().mean == doctest::Approx(all.stat().mean).epsilon(1e-13));
    CHECK(ab.stat().variance == doctest::Approx(all.stat().variance).epsilon(1e-12));
    CHECK(ba.stat().variance == doctest::Approx(ab.stat().variance).epsilon(1e-13));
    const auto s = all.stat();
    CHECK(s.std_error == doctest::Approx(std::sqrt(s.variance / 1000.0)));
    MomentAccumulator empty;
    empty.merge(a);
    CHECK(empty.stat().mean == a.stat().mean);
}

TEST_CASE("AWGN trials are deterministic")
{
    auto plan = plan_for(INFINITY, 3, 8, 6.0, 2000);
    const auto s = empirical_gain(plan);
    CHECK(s.variance < 1e-20);
    const auto profile = cluster_profiles({0.0, 6.0}, ArrayConfig{}, channel(INFINITY), 3,
                                          EvaluationMode::Geometric)[2];
    CHECK(s.mean == doctest::Approx(mean_gain(profile, GainModel{RicianFactor::infinite(), 8, 1.0}))
                        .epsilon(1e-12));
}

TEST_CASE("empirical gain matches the analytic mean at kappa=5, L=1, M_AP=8")
{
    const auto s = empirical_gain(plan_for(5.0, 1, 8, 10.0, 100000));
    CHECK(std::abs(s.mean - 41.0 / 6.0) < 3 * s.std_error);
}

TEST_CASE("reproducible across reruns and thread counts")
{
    auto plan = plan_for(1.0, 4, 8, 20.0, 10000, 99);
    plan.threads = 1;
    const auto a = empirical_gain(plan);
    plan.threads = 4;
    const auto b = empirical_gain(plan);
    plan.threads = 3;
    const auto c = empirical_gain(plan);
    CHECK(a.mean == b.mean);
    CHECK(a.variance == b.variance);
    CHECK(a.mean == c.mean);
    CHECK(a.variance == c.variance);

    const double thresholds[] = {5.0, 7.0};
    plan.threads = 1;
    const auto o1 = empirical_outage(plan, thresholds);
    plan.threads = 5;
    const auto o2 = empirical_outage(plan, thresholds);
    CHECK(o1[0].probability == o2[0].probability);
    CHECK(o1[1].probability == o2[1].probability);

    plan.master_seed = 100;
    CHECK(empirical_gain(plan).mean != a.mean);
}

TEST_CASE("empirical outage edge cases")
{
    const auto plan = plan_for(5.0, 1, 8, 10.0, 5000);
    CHECK(empirical_outage(plan, 0.0).probability == 0.0);
    CHECK(empirical_outage(plan, std::numeric_limits<double>::infinity()).probability == 1.0);
    const auto est = empirical_outage(plan, 41.0 / 6.0);
    CHECK(est.trials == 5000);
    CHECK(est.std_error == doctest::Approx(std::sqrt(est.probability * (1 - est.probability) / 5000)));

    // Deterministic gain: outage is a step at the LoS value.
    const auto awgn = plan_for(INFINITY, 1, 8, 10.0, 100);
    CHECK(empirical_outage(awgn, 8.0 * (1 - 1e-9)).probability == 0.0);
    CHECK(empirical_outage(awgn, 8.0 * (1 + 1e-9)).probability == 1.0);
}

TEST_CASE("variance lies between the Gaussian model and the exact value")
{
    for (double kappa : {1.0, 5.0}) {
        const auto plan = plan_for(kappa, 4, 8, 20.0, 200000, 31);
        const auto s = empirical_gain(plan);
        const auto profile = cluster_profiles(plan.scenario.user, ArrayConfig{}, channel(kappa), 4,
                                              EvaluationMode::Geometric)[3];
        const GainModel model{channel(kappa).rician_k, 8, 1.0};
        const double ratio = s.variance / fluct_variance(profile, model);
        CHECK(ratio >= 0.97);
        CHECK(ratio <= 1.3);
        CHECK(s.variance == doctest::Approx(exact_gain_variance(profile, model)).epsilon(0.03));
    }
}

TEST_CASE("stationary-array iSNR")
{
    TrialPlan plan;
    plan.trials = 200;
    CHECK(stationary_isnr(64, RicianFactor::infinite(), 3.0, plan).mean ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(stationary_isnr(64, RicianFactor::infinite(), 3.0, plan).variance < 1e-20);

    plan.trials = 100000;
    const auto one = stationary_isnr(1, RicianFactor(5.0), 1.0, plan);
    CHECK(std::abs(one.mean - 1.0) < 3 * one.std_error);

    // E[isnr] = (kappa + 1/M) / (1 + kappa) for stationary attenuation.
    plan.trials = 20000;
    const auto mid = stationary_isnr(64, RicianFactor(5.0), 1.0, plan);
    CHECK(std::abs(mid.mean - (5.0 + 1.0 / 64.0) / 6.0) < 3 * mid.std_error);
}
