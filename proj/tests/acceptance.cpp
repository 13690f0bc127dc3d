// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Every tolerance is a named constant below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "elaa/analytics.hpp"
#include "elaa/commands.hpp"
#include "elaa/coverage.hpp"
#include "elaa/montecarlo.hpp"
#include "elaa/optimizer.hpp"
#include "oracles.hpp"

using namespace elaa;

namespace {

// 1: large-array iSNR limit
constexpr std::size_t kLimitElements = 4096;
constexpr std::size_t kLimitTrials = 10000;
constexpr double kLimitRelTol = 0.02;
constexpr double kLimitMaxSeconds = 30.0;

// 2: shape of G(L)
constexpr std::size_t kShapeScanMax = 256;
constexpr double kShapeBoundaryBand = 1e-6;

// 4: mean gain
constexpr std::size_t kMeanTrials = 100000;
constexpr double kMeanStdErrors = 3.0;

// 5: fluctuation variance
constexpr std::size_t kVarTrials = 1000000;
constexpr double kVarRelTol = 0.10;

// 6: outage approximation
constexpr std::size_t kOutageTrials = 1000000;
constexpr double kOutageFactor = 3.0;

// 7: service ordering
constexpr double kOrderingFraction = 0.95;

// 8: coverage
constexpr double kExtensionRatio = 1.5;

// 9: periodicity and symmetry
constexpr double kPeriodicRelTol = 1e-9;

constexpr std::uint64_t kSeed = 1;

ChannelParams channel(double kappa, double q = 1.0)
{
    ChannelParams p;
    p.rician_k = std::isinf(kappa) ? RicianFactor::infinite() : RicianFactor(kappa);
    p.half_exponent = q;
    return p;
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome large_array_limit()
{
    TrialPlan plan;
    plan.trials = kLimitTrials;
    plan.master_seed = kSeed;
    const auto start = std::chrono::steady_clock::now();
    const auto stat = stationary_isnr(kLimitElements, RicianFactor(5.0), 1.0, plan);
    const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    const double target = 5.0 / 6.0;
    const double rel = std::abs(stat.mean - target) / target;
    return {rel <= kLimitRelTol && secs.count() < kLimitMaxSeconds,
            fmt("M=%zu mean iSNR %.6f vs %.6f (rel err %.2e, tol %.0e), %.2f s", kLimitElements,
                stat.mean, target, rel, kLimitRelTol, secs.count())};
}

// Concave: rises from L=1 to L=2, then falls after a single peak inside the
// scan. Monotone: never increases. Anything else matches neither class.
enum class Scanned { Concave, Monotone, Neither };

Scanned scan_shape(double eta, double q)
{
    std::vector<double> g(kShapeScanMax + 1);
    for (std::size_t L = 1; L <= kShapeScanMax; ++L) {
        g[L] = oracle::g(L, eta, q);
    }
    bool nonincreasing = true;
    for (std::size_t L = 1; L < kShapeScanMax; ++L) {
        nonincreasing = nonincreasing && g[L + 1] <= g[L];
    }
    if (nonincreasing) {
        return Scanned::Monotone;
    }
    const auto peak = static_cast<std::size_t>(std::max_element(g.begin() + 1, g.end()) - g.begin());
    bool unimodal = true;
    for (std::size_t L = 1; L < kShapeScanMax; ++L) {
        unimodal = unimodal && (L < peak ? g[L + 1] > g[L] : g[L + 1] <= g[L]);
    }
    if (g[2] > g[1] && unimodal && peak < kShapeScanMax) {
        return Scanned::Concave;
    }
    return Scanned::Neither;
}

Outcome shape_classification()
{
    const std::vector<double> qs = {1.0, 1.5, 2.0, 2.5, 3.0};
    const std::vector<double> factors = {0.02, 0.1, 0.3, 0.6, 0.95, 1.05, 1.5, 3.0, 10.0, 40.0};
    std::size_t pairs = 0;
    std::size_t agree = 0;
    std::string first_miss;
    for (double q : qs) {
        const double boundary = concavity_threshold(q);
        for (double f : factors) {
            const double eta = boundary * f;
            if (std::abs(eta - boundary) <= kShapeBoundaryBand) {
                continue;
            }
            ++pairs;
            const auto scanned = scan_shape(eta, q);
            const auto classified = classify_g(eta, q);
            const bool ok = (scanned == Scanned::Concave && classified == GainShape::Concave) ||
                            (scanned == Scanned::Monotone &&
                             classified == GainShape::MonotoneDecreasing);
            agree += ok ? 1 : 0;
            if (!ok && first_miss.empty()) {
                first_miss = fmt(" first miss eta=%.6g q=%.2f", eta, q);
            }
        }
    }
    return {agree == pairs && pairs == 50,
            fmt("%zu/%zu (eta, q) pairs agree with a scan of G over L=1..%zu", agree, pairs,
                kShapeScanMax) +
                first_miss};
}

Outcome near_field_cluster()
{
    const ArrayConfig cfg;
    const auto p = channel(INFINITY);
    const auto above = optimize_embb({640.0, 3.0}, cfg, p, cfg.total_aps);
    const auto midpoint = optimize_embb({645.0, 3.0}, cfg, p, cfg.total_aps);
    return {above.best_L == 1 && midpoint.best_L == 2,
            fmt("y=3: L*=%zu above an AP (want 1), L*=%zu at a midpoint (want 2)", above.best_L,
                midpoint.best_L)};
}

Outcome mean_gain_vs_monte_carlo()
{
    std::size_t cases = 0;
    std::size_t within = 0;
    double worst = 0.0;
    std::string worst_case;
    for (double kappa : {1.0, 5.0}) {
        for (std::size_t L : {1u, 4u, 16u}) {
            for (std::size_t m_ap : {8u, 16u}) {
                for (double y : {3.0, 20.0, 60.0}) {
                    ArrayConfig cfg;
                    cfg.antennas_per_ap = m_ap;
                    const auto params = channel(kappa);
                    // A user at the array end sees a one-sided cluster, the
                    // geometry of the closed form.
                    const UserLocation user{0.0, y};
                    const GainModel model{params.rician_k, m_ap, 1.0};
                    const double analytic =
                        mean_gain(L, eta_for(cfg.ap_spacing, y), params.half_exponent, model);
                    TrialPlan plan;
                    plan.trials = kMeanTrials;
                    plan.master_seed = kSeed;
                    plan.scenario = make_scenario(user, L, cfg, params);
                    const auto stat = empirical_gain(plan);
                    const double z = std::abs(analytic - stat.mean) / stat.std_error;
                    ++cases;
                    within += z <= kMeanStdErrors ? 1 : 0;
                    if (z > worst) {
                        worst = z;
                        worst_case = fmt("kappa=%g L=%zu M_AP=%zu y=%g", kappa, L, m_ap, y);
                    }
                }
            }
        }
    }
    return {within == cases,
            fmt("%zu/%zu configurations within %.0f standard errors; worst %.2f SE at ", within,
                cases, kMeanStdErrors, worst) +
                worst_case};
}

Outcome fluctuation_variance()
{
    ArrayConfig cfg;
    cfg.antennas_per_ap = 16;
    const auto params = channel(5.0);
    const UserLocation user{640.0, 10.0};
    bool pass = true;
    std::string detail;
    for (std::size_t L : {1u, 8u}) {
        const auto profile =
            cluster_profiles(user, cfg, params, L, EvaluationMode::Geometric).back();
        const double closed = fluct_variance(profile, gain_model_for(user, cfg, params));
        TrialPlan plan;
        plan.trials = kVarTrials;
        plan.master_seed = kSeed;
        plan.scenario = make_scenario(user, L, cfg, params);
        const double empirical = empirical_gain(plan).variance;
        const double rel = std::abs(closed - empirical) / empirical;
        pass = pass && rel <= kVarRelTol;
        detail += fmt("L=%zu closed %.5g vs empirical %.5g (rel %.2e); ", L, closed, empirical, rel);
    }
    return {pass, detail + fmt("tol %.0f%%", kVarRelTol * 100.0)};
}

Outcome outage_approximation()
{
    const ArrayConfig cfg;
    const auto params = channel(5.0);
    const UserLocation user{640.0, 10.0};
    const auto profile = cluster_profiles(user, cfg, params, 1, EvaluationMode::Geometric).back();
    const auto model = gain_model_for(user, cfg, params);
    const double mean = mean_gain(profile, model);
    const double sigma = std::sqrt(fluct_variance(profile, model));

    const std::vector<double> targets = {1e-2, 1e-3};
    std::vector<double> thresholds;
    for (double t : targets) {
        thresholds.push_back(gain_threshold(t, mean, sigma));
    }
    TrialPlan plan;
    plan.trials = kOutageTrials;
    plan.master_seed = kSeed;
    plan.scenario = make_scenario(user, 1, cfg, params);
    const auto est = empirical_outage(plan, thresholds);

    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double predicted = outage_probability(thresholds[i], mean, sigma);
        const double observed = est[i].probability;
        const double ratio = observed > 0.0 ? std::max(predicted / observed, observed / predicted)
                                            : INFINITY;
        pass = pass && ratio <= kOutageFactor;
        detail += fmt("beta_top=%.5f predicted %.3g, empirical %.3g (x%.1f); ", thresholds[i],
                      predicted, observed, ratio);
    }
    return {pass, detail + fmt("allowed factor %.0f", kOutageFactor)};
}

Outcome service_ordering()
{
    const ArrayConfig cfg;
    std::size_t cells = 0;
    std::size_t ordered = 0;
    std::size_t awgn_equal = 0;
    for (std::size_t ix = 0; ix < 40; ++ix) {
        for (std::size_t iy = 0; iy < 20; ++iy) {
            const UserLocation user{640.0 + 0.25 * static_cast<double>(ix),
                                    2.0 + 2.0 * static_cast<double>(iy)};
            const auto e = optimize_embb(user, cfg, channel(5.0), cfg.total_aps);
            const auto u = optimize_urllc(user, cfg, channel(5.0), 0.5e-6, cfg.total_aps);
            const auto ea = optimize_embb(user, cfg, channel(INFINITY), cfg.total_aps);
            const auto ua = optimize_urllc(user, cfg, channel(INFINITY), 0.5e-6, cfg.total_aps);
            ++cells;
            ordered += u.best_L >= e.best_L ? 1 : 0;
            awgn_equal += ua.best_L == ea.best_L ? 1 : 0;
        }
    }
    const double frac = static_cast<double>(ordered) / static_cast<double>(cells);
    return {frac >= kOrderingFraction && awgn_equal == cells,
            fmt("kappa=5: L*(URLLC) >= L*(eMBB) on %.1f%% of %zu cells (need %.0f%%); "
                "kappa=inf: equal on %zu/%zu",
                100.0 * frac, cells, 100.0 * kOrderingFraction, awgn_equal, cells)};
}

Outcome coverage_dominance_and_extension()
{
    std::vector<double> reqs_db;
    for (double db = -3.0; db <= 24.0; db += 1.0) {
        reqs_db.push_back(db);
    }
    std::vector<double> reqs;
    for (double db : reqs_db) {
        reqs.push_back(from_db(db));
    }
    const std::vector<double> ys = {2.0, 5.0, 10.0, 20.0, 40.0};

    std::size_t tested = 0;
    std::size_t violations = 0;
    std::string extension;
    bool extended_all = true;
    for (auto kind : {ServiceKind::Embb, ServiceKind::Urllc}) {
        for (double kappa : {1.0, 5.0, double(INFINITY)}) {
            for (std::size_t m_ap : {8u, 16u}) {
                ArrayConfig cfg;
                cfg.antennas_per_ap = m_ap;
                CoverageSpec spec;
                spec.x_start = 640.0;
                spec.y_values = ys;
                spec.service.kind = kind;
                const auto curve = coverage_curve(spec, reqs, cfg, channel(kappa));
                for (std::size_t i = 0; i + 1 < curve.size(); i += 2) {
                    ++tested;
                    violations += curve[i].p_cov < curve[i + 1].p_cov ? 1 : 0;
                }
                if (kappa != 5.0 || m_ap != 16) {
                    continue;
                }
                // Longest run of consecutive requirements with
                // optimized / single-AP >= the ratio, single-AP coverage nonzero.
                std::size_t best_run = 0;
                double best_y = 0.0;
                double run_lo = 0.0;
                double run_hi = 0.0;
                for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                    std::size_t run = 0;
                    for (std::size_t r = 0; r < reqs.size(); ++r) {
                        const auto& opt = curve[2 * (iy * reqs.size() + r)];
                        const auto& one = curve[2 * (iy * reqs.size() + r) + 1];
                        const bool ok = one.p_cov > 0.0 && opt.p_cov >= kExtensionRatio * one.p_cov;
                        run = ok ? run + 1 : 0;
                        if (run > best_run) {
                            best_run = run;
                            best_y = ys[iy];
                            run_hi = reqs_db[r];
                            run_lo = reqs_db[r + 1 - run];
                        }
                    }
                }
                extended_all = extended_all && best_run >= 2;
                extension += fmt(" %s: ratio >= %.1f over %g..%g dB at y=%g (%zu points);",
                                 std::string(to_string(kind)).c_str(), kExtensionRatio, run_lo,
                                 run_hi, best_y, best_run);
            }
        }
    }
    return {violations == 0 && extended_all,
            fmt("optimized >= single-AP at %zu/%zu (service, kappa, M_AP, y, beta_req) points;",
                tested - violations, tested) +
                extension};
}

Outcome periodicity_and_symmetry()
{
    const ArrayConfig cfg;
    const MapExtent extent{630.0, 660.0, 1.0, 40.0};
    const double res = 0.25;
    const std::size_t period = 40;   // d_AP / res
    const std::size_t half = 20;
    double worst = 0.0;
    std::size_t compared = 0;
    for (double kappa : {5.0, double(INFINITY)}) {
        for (auto kind : {ServiceKind::Embb, ServiceKind::Urllc}) {
            ServiceSpec service;
            service.kind = kind;
            const auto map = gain_map(extent, res, service, cfg, channel(kappa));
            auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
            for (std::size_t iy = 0; iy < map.ny; ++iy) {
                for (std::size_t ix = 0; ix + period < map.nx; ++ix) {
                    worst = std::max(worst, rel(map.at(ix, iy).objective, map.at(ix + period, iy).objective));
                    ++compared;
                }
                // Mirror about the APs at 640 and 650 and the midpoints 635, 645 and 655.
                for (std::size_t center = half; center + half < map.nx; center += half) {
                    for (std::size_t d = 1; d <= half; ++d) {
                        worst = std::max(worst, rel(map.at(center - d, iy).objective,
                                                    map.at(center + d, iy).objective));
                        ++compared;
                    }
                }
            }
        }
    }
    return {worst <= kPeriodicRelTol,
            fmt("%zu shifted/mirrored pairs, worst relative difference %.2e (tol %.0e)", compared,
                worst, kPeriodicRelTol)};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism()
{
    const auto root = std::filesystem::temp_directory_path() / "elaa_acceptance_determinism";
    std::filesystem::remove_all(root);
    const std::vector<std::string> sets = {"outage.trials=200000", "map.y_max=20",
                                           "coverage.y_values=[5, 20]"};
    std::size_t identical = 0;
    std::string differing;
    for (auto name : command_names()) {
        std::string reference;
        bool same = true;
        int run = 0;
        for (unsigned threads : {1u, 4u, 1u, 7u}) {
            auto cfg = load_config(std::nullopt, sets);
            cfg.experiment.threads = threads;
            cfg.experiment.out_dir = (root / ("run" + std::to_string(run++))).string();
            const auto text = slurp(run_command(name, cfg).csv);
            if (reference.empty()) {
                reference = text;
            }
            same = same && text == reference && !text.empty();
        }
        identical += same ? 1 : 0;
        if (!same) {
            differing += " " + std::string(name);
        }
    }
    std::filesystem::remove_all(root);
    return {identical == command_names().size(),
            fmt("%zu/%zu commands byte-identical over threads 1, 4, 1, 7", identical,
                command_names().size()) +
                (differing.empty() ? "" : "; differing:" + differing)};
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "large-array iSNR limit", large_array_limit},
        {2, "G(L) shape classification", shape_classification},
        {3, "near-field optimum cluster size", near_field_cluster},
        {4, "closed-form mean gain vs Monte Carlo", mean_gain_vs_monte_carlo},
        {5, "fluctuation variance vs Monte Carlo", fluctuation_variance},
        {6, "outage approximation vs Monte Carlo", outage_approximation},
        {7, "service ordering of cluster sizes", service_ordering},
        {8, "coverage dominance and extension", coverage_dominance_and_extension},
        {9, "gain map periodicity and symmetry", periodicity_and_symmetry},
        {10, "byte-identical output across thread counts", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
