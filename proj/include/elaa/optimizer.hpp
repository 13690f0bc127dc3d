#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "elaa/analytics.hpp"
#include "elaa/channel.hpp"
#include "elaa/geometry.hpp"

namespace elaa {

enum class ServiceKind { Embb, Urllc };

std::string_view to_string(ServiceKind kind);
/// Accepts "eMBB"/"embb" and "URLLC"/"urllc"; throws ParameterError otherwise.
ServiceKind parse_service_kind(std::string_view text);

struct ServiceSpec {
    ServiceKind kind = ServiceKind::Embb;
    double outage_target = 0.5e-6;  // URLLC only
    double required_gain = 1.0;     // coverage queries

    void validate() const;
};

/// How the attenuation sums of an L-AP cluster are formed.
///  - Analytic: one-sided cluster from the perpendicular foot with
///    eta = (d_AP / y)^2, independent of x.
///  - Geometric: the nearest-L APs of select_cluster with their actual
///    distances to the user.
enum class EvaluationMode { Analytic, Geometric };

std::string_view to_string(EvaluationMode mode);
EvaluationMode parse_evaluation_mode(std::string_view text);

struct ObjectivePoint {
    std::size_t cluster_size = 0;
    double objective = 0.0;
};

struct ClusterResult {
    std::size_t best_L = 0;
    double objective = 0.0;
    std::vector<std::size_t> ap_indices;
    std::vector<ObjectivePoint> objective_curve;
};

/// Profiles for cluster sizes 1..max_cluster (index L - 1).
std::vector<AttenuationProfile> cluster_profiles(const UserLocation& user, const ArrayConfig& cfg,
                                                 const ChannelParams& params,
                                                 std::size_t max_cluster, EvaluationMode mode);

GainModel gain_model_for(const UserLocation& user, const ArrayConfig& cfg,
                         const ChannelParams& params);

/// Per-service objective: E[beta_bar] for eMBB, the reliability-guaranteed
/// gain threshold for URLLC.
double service_objective(const AttenuationProfile& profile, const GainModel& model,
                         const ServiceSpec& service);

/// Full scan over L = 1..max_cluster; the argmax keeps the smallest L on ties.
ClusterResult optimize_cluster(const UserLocation& user, const ArrayConfig& cfg,
                               const ChannelParams& params, const ServiceSpec& service,
                               std::size_t max_cluster,
                               EvaluationMode mode = EvaluationMode::Geometric);

ClusterResult optimize_embb(const UserLocation& user, const ArrayConfig& cfg,
                            const ChannelParams& params, std::size_t max_cluster,
                            EvaluationMode mode = EvaluationMode::Geometric);

ClusterResult optimize_urllc(const UserLocation& user, const ArrayConfig& cfg,
                             const ChannelParams& params, double outage_target,
                             std::size_t max_cluster,
                             EvaluationMode mode = EvaluationMode::Geometric);

/// AP indices of the one-sided cluster used in analytic mode: the AP nearest
/// the foot and the next L - 1 towards higher x, shifted back inside the array
/// when it would overrun the last AP.
std::vector<std::size_t> one_sided_indices(double x, std::size_t cluster_size,
                                           const ArrayConfig& cfg);

}  // namespace elaa
