#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "elaa/analytics.hpp"
#include "elaa/channel.hpp"
#include "elaa/geometry.hpp"
#include "elaa/optimizer.hpp"

namespace elaa {

struct AnalysisOptions {
    std::size_t max_cluster = 0;  // 0 = every AP of the array
    EvaluationMode mode = EvaluationMode::Geometric;
    unsigned threads = 0;
    /// Fraction of the array span, centered on the middle AP, treated as free
    /// of edge effects.
    double central_window = 0.5;

    std::size_t resolved_max_cluster(const ArrayConfig& cfg) const;
};

/// Closed interval [lo, hi] on the x-axis away from the array ends.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

Interval central_window(const ArrayConfig& cfg, double fraction);

/// Inclusive rectangular extent; both sides must be whole multiples of the
/// map resolution.
struct MapExtent {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 1.0;
    double y_max = 1.0;
};

struct GainCell {
    double x = 0.0;
    double y = 0.0;
    double objective = 0.0;
    double objective_db = 0.0;  // 0 dB is beta_bar = 1
    std::size_t best_L = 0;
};

struct GainMap {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double resolution = 0.0;
    std::vector<GainCell> cells;  // row-major, y outer
    bool edge_warning = false;  // extent leaves the central window

    const GainCell& at(std::size_t ix, std::size_t iy) const { return cells[iy * nx + ix]; }
};

double to_db(double linear);
double from_db(double db);

/// Optimized objective and L* per grid point.
GainMap gain_map(const MapExtent& extent, double resolution, const ServiceSpec& service,
                 const ArrayConfig& cfg, const ChannelParams& params,
                 const AnalysisOptions& options = {});

/// How the per-location probability P(beta_bar > required) is modeled.
///  - ServiceObjective: 1 when the service objective at the chosen cluster
///    (E[beta_bar] for eMBB, the guaranteed gain at the outage target for
///    URLLC) exceeds the requirement, else 0. Coverage then is the fraction of
///    the period where the service is delivered; boundaries are located by
///    bisection so the result does not carry midpoint-rule staircase error.
///  - Gaussian: N(mean, fluct_variance) tail probability for either service.
enum class ExceedanceModel { ServiceObjective, Gaussian };

std::string_view to_string(ExceedanceModel model);
ExceedanceModel parse_exceedance_model(std::string_view text);

struct CoverageSpec {
    double x_start = 0.0;  // X_o
    std::vector<double> y_values;
    double required_gain = 1.0;
    std::size_t quadrature_points = 256;
    ServiceSpec service;
    ExceedanceModel model = ExceedanceModel::ServiceObjective;

    void validate() const;
};

enum class ClusterPolicy { Optimized, SingleAp };

std::string_view to_string(ClusterPolicy policy);

/// P(beta_bar > required) at one location for a given cluster under the
/// chosen model. A requirement <= 0 is always met; with zero fluctuation
/// both models reduce to a step at the mean.
double exceedance_probability(const AttenuationProfile& profile, const GainModel& model,
                              const ServiceSpec& service, double required_gain,
                              ExceedanceModel exceedance = ExceedanceModel::ServiceObjective);

/// Fraction of one AP period [X_o, X_o + d_AP] over which the requirement is
/// met: composite midpoint rule over spec.quadrature_points cells, with the
/// coverage boundaries of the ServiceObjective model refined by bisection.
double coverage_probability(double y, const CoverageSpec& spec, const ArrayConfig& cfg,
                            const ChannelParams& params,
                            ClusterPolicy policy = ClusterPolicy::Optimized,
                            const AnalysisOptions& options = {});

struct CoveragePoint {
    double y = 0.0;
    double required_gain = 0.0;
    ClusterPolicy policy = ClusterPolicy::Optimized;
    double p_cov = 0.0;
};

/// Coverage for every y in spec.y_values and every requirement, under both
/// the optimized cluster and the nearest single AP. An empty requirement list
/// uses spec.required_gain. Ordered by y, then requirement, then policy.
std::vector<CoveragePoint> coverage_curve(const CoverageSpec& spec,
                                          std::span<const double> required_gains,
                                          const ArrayConfig& cfg, const ChannelParams& params,
                                          const AnalysisOptions& options = {});

/// Monte Carlo counterpart of the Gaussian model: per quadrature point the
/// exceedance is measured over `trials` channel draws of the service's
/// optimized cluster.
double coverage_probability_mc(double y, const CoverageSpec& spec, const ArrayConfig& cfg,
                               const ChannelParams& params, std::size_t trials,
                               std::uint64_t seed, const AnalysisOptions& options = {});

}  // namespace elaa
