#include "elaa/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "elaa/error.hpp"

namespace elaa {

std::string_view to_string(ServiceKind kind)
{
    return kind == ServiceKind::Embb ? "eMBB" : "URLLC";
}

ServiceKind parse_service_kind(std::string_view text)
{
    if (text == "eMBB" || text == "embb" || text == "EMBB") {
        return ServiceKind::Embb;
    }
    if (text == "URLLC" || text == "urllc") {
        return ServiceKind::Urllc;
    }
    throw ParameterError("service.kind", "expected eMBB or URLLC, got '" + std::string(text) + "'");
}

void ServiceSpec::validate() const
{
    if (!(outage_target > 0.0 && outage_target < 1.0)) {
        throw ParameterError("service.outage_target", "must lie in (0, 1)");
    }
    if (!(required_gain >= 0.0)) {
        throw ParameterError("service.required_gain", "must be nonnegative");
    }
}

std::string_view to_string(EvaluationMode mode)
{
    return mode == EvaluationMode::Analytic ? "analytic" : "geometric";
}

EvaluationMode parse_evaluation_mode(std::string_view text)
{
    if (text == "analytic") {
        return EvaluationMode::Analytic;
    }
    if (text == "geometric") {
        return EvaluationMode::Geometric;
    }
    throw ParameterError("experiment.mode",
                         "expected analytic or geometric, got '" + std::string(text) + "'");
}

std::vector<AttenuationProfile> cluster_profiles(const UserLocation& user, const ArrayConfig& cfg,
                                                 const ChannelParams& params,
                                                 std::size_t max_cluster, EvaluationMode mode)
{
    if (max_cluster < 1 || max_cluster > cfg.total_aps) {
        throw std::out_of_range("cluster scan limit " + std::to_string(max_cluster) +
                                " outside [1, " + std::to_string(cfg.total_aps) + "]");
    }
    std::vector<AttenuationProfile> out(max_cluster);
    double sum = 0.0;
    double sum_sq = 0.0;

    if (mode == EvaluationMode::Analytic) {
        const double eta = eta_for(cfg.ap_spacing, user.y);
        for (std::size_t l = 0; l < max_cluster; ++l) {
            const double ld = static_cast<double>(l);
            const double r = std::pow(1.0 + ld * ld * eta, -params.half_exponent / 2.0);
            sum += r;
            sum_sq += r * r;
            const auto n = static_cast<double>(l + 1);
            out[l] = {l + 1, sum / std::sqrt(n), sum_sq / n};
        }
        return out;
    }

    const auto order = nearest_ap_order(user.x, cfg);
    for (std::size_t l = 0; l < max_cluster; ++l) {
        const double center = static_cast<double>(order[l]) * cfg.ap_spacing;
        const double d = element_distance(center, user);
        const double r = std::pow(user.y / d, params.half_exponent);
        sum += r;
        sum_sq += r * r;
        const auto n = static_cast<double>(l + 1);
        out[l] = {l + 1, sum / std::sqrt(n), sum_sq / n};
    }
    return out;
}

GainModel gain_model_for(const UserLocation& user, const ArrayConfig& cfg,
                         const ChannelParams& params)
{
    return {params.rician_k, cfg.antennas_per_ap, params.perpendicular_gain(user.y)};
}

double service_objective(const AttenuationProfile& profile, const GainModel& model,
                         const ServiceSpec& service)
{
    const double mean = mean_gain(profile, model);
    if (service.kind == ServiceKind::Embb) {
        return mean;
    }
    return gain_threshold(service.outage_target, mean, std::sqrt(fluct_variance(profile, model)));
}

std::vector<std::size_t> one_sided_indices(double x, std::size_t cluster_size,
                                           const ArrayConfig& cfg)
{
    const std::size_t foot = nearest_ap_order(x, cfg).front();
    const std::size_t start = std::min(foot, cfg.total_aps - cluster_size);
    std::vector<std::size_t> out(cluster_size);
    for (std::size_t k = 0; k < cluster_size; ++k) {
        out[k] = start + k;
    }
    return out;
}

ClusterResult optimize_cluster(const UserLocation& user, const ArrayConfig& cfg,
                               const ChannelParams& params, const ServiceSpec& service,
                               std::size_t max_cluster, EvaluationMode mode)
{
    user.validate();
    const auto profiles = cluster_profiles(user, cfg, params, max_cluster, mode);
    const auto model = gain_model_for(user, cfg, params);

    ClusterResult result;
    result.objective_curve.reserve(profiles.size());
    for (const auto& profile : profiles) {
        const double value = service_objective(profile, model, service);
        result.objective_curve.push_back({profile.cluster_size, value});
        // Strict comparison keeps the smallest L on ties.
        if (result.best_L == 0 || value > result.objective) {
            result.best_L = profile.cluster_size;
            result.objective = value;
        }
    }
    if (mode == EvaluationMode::Geometric) {
        result.ap_indices = select_cluster(user, result.best_L, cfg).ap_indices;
    } else {
        result.ap_indices = one_sided_indices(user.x, result.best_L, cfg);
    }
    return result;
}

ClusterResult optimize_embb(const UserLocation& user, const ArrayConfig& cfg,
                            const ChannelParams& params, std::size_t max_cluster,
                            EvaluationMode mode)
{
    return optimize_cluster(user, cfg, params, ServiceSpec{ServiceKind::Embb}, max_cluster, mode);
}

ClusterResult optimize_urllc(const UserLocation& user, const ArrayConfig& cfg,
                             const ChannelParams& params, double outage_target,
                             std::size_t max_cluster, EvaluationMode mode)
{
    ServiceSpec service{ServiceKind::Urllc, outage_target};
    service.validate();
    return optimize_cluster(user, cfg, params, service, max_cluster, mode);
}

}  // namespace elaa
