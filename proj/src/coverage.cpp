#include "elaa/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "elaa/error.hpp"
#include "elaa/montecarlo.hpp"
#include "elaa/parallel.hpp"

namespace elaa {

std::size_t AnalysisOptions::resolved_max_cluster(const ArrayConfig& cfg) const
{
    return max_cluster == 0 ? cfg.total_aps : max_cluster;
}

Interval central_window(const ArrayConfig& cfg, double fraction)
{
    const double middle = cfg.span() / 2.0;
    const double half = std::clamp(fraction, 0.0, 1.0) * cfg.span() / 2.0;
    return {middle - half, middle + half};
}

double to_db(double linear)
{
    return linear > 0.0 ? 10.0 * std::log10(linear) : -std::numeric_limits<double>::infinity();
}

double from_db(double db)
{
    return std::pow(10.0, db / 10.0);
}

namespace {

std::size_t grid_points(double lo, double hi, double resolution, const char* axis)
{
    const double steps = (hi - lo) / resolution;
    const double rounded = std::round(steps);
    if (steps < -1e-9 || std::abs(steps - rounded) > 1e-9 * std::max(1.0, rounded)) {
        throw ParameterError(std::string("map.") + axis,
                             "extent is not a whole number of resolution steps");
    }
    return static_cast<std::size_t>(rounded) + 1;
}

}  // namespace

GainMap gain_map(const MapExtent& extent, double resolution, const ServiceSpec& service,
                 const ArrayConfig& cfg, const ChannelParams& params,
                 const AnalysisOptions& options)
{
    if (!(resolution > 0.0)) {
        throw ParameterError("map.resolution", "must be positive");
    }
    if (!(extent.y_min > 0.0)) {
        throw ParameterError("map.y_min", "must be strictly positive");
    }
    service.validate();

    GainMap map;
    map.resolution = resolution;
    map.nx = grid_points(extent.x_min, extent.x_max, resolution, "x");
    map.ny = grid_points(extent.y_min, extent.y_max, resolution, "y");
    map.cells.resize(map.nx * map.ny);

    const auto window = central_window(cfg, options.central_window);
    map.edge_warning = extent.x_min < window.lo || extent.x_max > window.hi;

    const std::size_t max_cluster = options.resolved_max_cluster(cfg);
    parallel_for(map.cells.size(), options.threads, [&](std::size_t i) {
        const std::size_t ix = i % map.nx;
        const std::size_t iy = i / map.nx;
        const UserLocation user{extent.x_min + static_cast<double>(ix) * resolution,
                                extent.y_min + static_cast<double>(iy) * resolution};
        const auto result =
            optimize_cluster(user, cfg, params, service, max_cluster, options.mode);
        map.cells[i] = {user.x, user.y, result.objective, to_db(result.objective),
                        result.best_L};
    });
    return map;
}

void CoverageSpec::validate() const
{
    if (quadrature_points < 8) {
        throw ParameterError("coverage.quadrature_points", "must be at least 8");
    }
    if (!(required_gain >= 0.0)) {
        throw ParameterError("coverage.required_gain", "must be nonnegative");
    }
    for (double y : y_values) {
        if (!(y > 0.0)) {
            throw ParameterError("coverage.y_values", "every y must be strictly positive");
        }
    }
    service.validate();
}

std::string_view to_string(ClusterPolicy policy)
{
    return policy == ClusterPolicy::Optimized ? "optimized" : "single_ap";
}

std::string_view to_string(ExceedanceModel model)
{
    return model == ExceedanceModel::ServiceObjective ? "service_objective" : "gaussian";
}

ExceedanceModel parse_exceedance_model(std::string_view text)
{
    if (text == "service_objective") {
        return ExceedanceModel::ServiceObjective;
    }
    if (text == "gaussian") {
        return ExceedanceModel::Gaussian;
    }
    throw ParameterError("coverage.model", "expected service_objective or gaussian, got '" +
                                               std::string(text) + "'");
}

double exceedance_probability(const AttenuationProfile& profile, const GainModel& model,
                              const ServiceSpec& service, double required_gain,
                              ExceedanceModel exceedance)
{
    if (required_gain <= 0.0) {
        return 1.0;
    }
    if (exceedance == ExceedanceModel::ServiceObjective) {
        return service_objective(profile, model, service) > required_gain ? 1.0 : 0.0;
    }
    const double mean = mean_gain(profile, model);
    const double sigma = std::sqrt(fluct_variance(profile, model));
    if (sigma <= 0.0) {
        return mean > required_gain ? 1.0 : 0.0;
    }
    return 0.5 * std::erfc((required_gain - mean) / (sigma * std::numbers::sqrt2));
}

namespace {

struct QuadratureNode {
    double x = 0.0;
    double objective = 0.0;
    AttenuationProfile profile;
    GainModel model;
};

// Cluster choice along one period at fixed y. Independent of the requirement,
// so one set of nodes serves every requirement.
class PeriodSampler {
public:
    PeriodSampler(double y, const CoverageSpec& spec, const ArrayConfig& cfg,
                  const ChannelParams& params, ClusterPolicy policy, const AnalysisOptions& options)
        : y_(y),
          spec_(spec),
          cfg_(cfg),
          params_(params),
          options_(options),
          max_cluster_(policy == ClusterPolicy::SingleAp ? 1 : options.resolved_max_cluster(cfg))
    {
        const std::size_t n = spec.quadrature_points;
        const double h = cfg.ap_spacing / static_cast<double>(n);
        midpoints_.resize(n);
        parallel_for(n + 2, options.threads, [&](std::size_t k) {
            if (k < n) {
                midpoints_[k] = node_at(spec.x_start + (static_cast<double>(k) + 0.5) * h);
            } else if (k == n) {
                first_ = node_at(spec.x_start);
            } else {
                last_ = node_at(spec.x_start + cfg.ap_spacing);
            }
        });
    }

    double integrate(double required_gain, ExceedanceModel model) const
    {
        if (model == ExceedanceModel::Gaussian || required_gain <= 0.0) {
            double sum = 0.0;
            for (const auto& node : midpoints_) {
                sum += exceedance_probability(node.profile, node.model, spec_.service,
                                              required_gain, model);
            }
            return std::clamp(sum / static_cast<double>(midpoints_.size()), 0.0, 1.0);
        }

        // Covered length between consecutive evaluation points, with the
        // boundary located by bisection whenever the indicator flips.
        const auto covered = [&](const QuadratureNode& a, const QuadratureNode& b) {
            const bool in_a = a.objective > required_gain;
            const bool in_b = b.objective > required_gain;
            if (in_a == in_b) {
                return in_a ? b.x - a.x : 0.0;
            }
            double lo = a.x;
            double hi = b.x;
            for (int iter = 0; iter < 60 && hi - lo > 1e-12 * cfg_.ap_spacing; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if ((objective_at(mid) > required_gain) == in_a) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double crossing = 0.5 * (lo + hi);
            return in_a ? crossing - a.x : b.x - crossing;
        };

        double length = covered(first_, midpoints_.front());
        for (std::size_t k = 0; k + 1 < midpoints_.size(); ++k) {
            length += covered(midpoints_[k], midpoints_[k + 1]);
        }
        length += covered(midpoints_.back(), last_);
        return std::clamp(length / cfg_.ap_spacing, 0.0, 1.0);
    }

private:
    QuadratureNode node_at(double x) const
    {
        const UserLocation user{x, y_};
        const auto profiles = cluster_profiles(user, cfg_, params_, max_cluster_, options_.mode);
        const auto model = gain_model_for(user, cfg_, params_);
        QuadratureNode node{x, 0.0, profiles.front(), model};
        for (std::size_t l = 0; l < profiles.size(); ++l) {
            const double value = service_objective(profiles[l], model, spec_.service);
            if (l == 0 || value > node.objective) {
                node.objective = value;
                node.profile = profiles[l];
            }
        }
        return node;
    }

    double objective_at(double x) const { return node_at(x).objective; }

    double y_;
    const CoverageSpec& spec_;
    const ArrayConfig& cfg_;
    const ChannelParams& params_;
    const AnalysisOptions& options_;
    std::size_t max_cluster_;
    std::vector<QuadratureNode> midpoints_;
    QuadratureNode first_;
    QuadratureNode last_;
};

}  // namespace

double coverage_probability(double y, const CoverageSpec& spec, const ArrayConfig& cfg,
                            const ChannelParams& params, ClusterPolicy policy,
                            const AnalysisOptions& options)
{
    spec.validate();
    return PeriodSampler(y, spec, cfg, params, policy, options)
        .integrate(spec.required_gain, spec.model);
}

std::vector<CoveragePoint> coverage_curve(const CoverageSpec& spec,
                                          std::span<const double> required_gains,
                                          const ArrayConfig& cfg, const ChannelParams& params,
                                          const AnalysisOptions& options)
{
    spec.validate();
    std::vector<double> gains(required_gains.begin(), required_gains.end());
    if (gains.empty()) {
        gains.push_back(spec.required_gain);
    }
    std::vector<CoveragePoint> out;
    out.reserve(spec.y_values.size() * gains.size() * 2);
    for (double y : spec.y_values) {
        const PeriodSampler optimized(y, spec, cfg, params, ClusterPolicy::Optimized, options);
        const PeriodSampler single(y, spec, cfg, params, ClusterPolicy::SingleAp, options);
        for (double req : gains) {
            out.push_back({y, req, ClusterPolicy::Optimized, optimized.integrate(req, spec.model)});
            out.push_back({y, req, ClusterPolicy::SingleAp, single.integrate(req, spec.model)});
        }
    }
    return out;
}

double coverage_probability_mc(double y, const CoverageSpec& spec, const ArrayConfig& cfg,
                               const ChannelParams& params, std::size_t trials,
                               std::uint64_t seed, const AnalysisOptions& options)
{
    spec.validate();
    const std::size_t n = spec.quadrature_points;
    const std::size_t max_cluster = options.resolved_max_cluster(cfg);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const UserLocation user{
            spec.x_start + (static_cast<double>(k) + 0.5) * cfg.ap_spacing / static_cast<double>(n),
            y};
        const auto result =
            optimize_cluster(user, cfg, params, spec.service, max_cluster, options.mode);
        TrialPlan plan;
        plan.trials = trials;
        // Distinct key per quadrature point.
        plan.master_seed = seed + k;
        plan.threads = options.threads;
        plan.scenario = make_scenario(user, result.best_L, cfg, params);
        sum += 1.0 - empirical_outage(plan, spec.required_gain).probability;
    }
    return sum / static_cast<double>(n);
}

}  // namespace elaa
