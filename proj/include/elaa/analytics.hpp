#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "elaa/channel.hpp"

namespace elaa {

/// Normalized attenuation sums of an L-AP cluster, with r_l = alpha_l / alpha_perp:
///   g     = sum(r_l) / sqrt(L)
///   gamma = sum(r_l^2) / L
/// Every closed-form gain statistic below is a function of these two numbers.
struct AttenuationProfile {
    std::size_t cluster_size = 1;
    double g = 1.0;
    double gamma = 1.0;
};

/// eta = (d_AP / d_perp)^2.
double eta_for(double ap_spacing, double d_perp);

/// One-sided cluster starting at the perpendicular foot:
/// G(L) = sum_{l<L} (1 + l^2 eta)^(-q/2) / sqrt(L).
double g_function(std::size_t cluster_size, double eta, double q);

/// Gamma(L) = sum_{l<L} (1 + l^2 eta)^(-q) / L. Strictly decreasing in L.
double gamma_function(std::size_t cluster_size, double eta, double q);

AttenuationProfile analytic_profile(std::size_t cluster_size, double eta, double q);

/// Profile from explicit attenuation ratios, one per AP.
AttenuationProfile profile_from_ratios(std::span<const double> ratios);

/// Boundary eta below which G(L) rises before it falls:
/// (sqrt(2) + 1)^(2/q) - 1.
double concavity_threshold(double q);

enum class GainShape { Concave, MonotoneDecreasing };

std::string_view to_string(GainShape shape);

/// Concave iff eta is strictly below concavity_threshold(q).
GainShape classify_g(double eta, double q);

/// Parameters shared by the gain statistics of one user.
struct GainModel {
    RicianFactor rician_k;
    std::size_t antennas_per_ap = 8;
    double perpendicular_gain = 1.0;  // alpha_perp
};

/// Deterministic LoS part of the normalized gain:
/// kappa/(1+kappa) * alpha_perp^2 * M_AP * G^2.
double los_gain_approx(const AttenuationProfile& profile, const GainModel& model);

/// E[beta_bar] = alpha_perp^2 / (1+kappa) * (kappa * M_AP * G^2 + Gamma).
///
/// M_AP multiplies G^2 here. Summing the element attenuations AP by AP
/// gives sum_m alpha_m = M_AP * sum_l alpha_l, so the LoS power per element
/// scales with M_AP; the Monte Carlo mean of |h^T w|^2 / M confirms it.
double mean_gain(const AttenuationProfile& profile, const GainModel& model);

/// Variance of the first-order fluctuation 2 a Re(b) / M:
/// 2 kappa M_AP alpha_perp^4 G^2 Gamma / (1+kappa)^2.
double fluct_variance(const AttenuationProfile& profile, const GainModel& model);

/// Exact variance of beta_bar, keeping the |b|^2 / M term that the Gaussian
/// fluctuation model drops: fluct_variance + (alpha_perp^2 Gamma / (1+kappa))^2.
double exact_gain_variance(const AttenuationProfile& profile, const GainModel& model);

double los_gain_approx(std::size_t cluster_size, double eta, double q, const GainModel& model);
double mean_gain(std::size_t cluster_size, double eta, double q, const GainModel& model);
double fluct_variance(std::size_t cluster_size, double eta, double q, const GainModel& model);

/// Closed-form statistics of one (user, cluster) configuration.
struct GainStats {
    double eta = 0.0;
    double g_value = 1.0;
    double gamma_value = 1.0;
    double mean_gain = 0.0;
    double fluct_variance = 0.0;
    double los_component = 0.0;
    std::size_t cluster_size = 1;
};

GainStats gain_stats(std::size_t cluster_size, double eta, double q, const GainModel& model);

/// Rectangle-rule left-tail outage of a Gaussian gain:
///   beta_top / (2 sqrt(2 pi) sigma) * exp(-(beta_top - mean)^2 / (2 sigma^2))
/// clamped to [0, 1]. Only meaningful below the mean; throws
/// std::domain_error for beta_top outside [0, mean). sigma == 0 gives 0.
double outage_probability(double beta_top, double mean, double sigma);

/// Gaussian CDF P(N(mean, sigma^2) < beta_top), reported next to the
/// rectangle-rule value. sigma == 0 gives a step at the mean.
double gaussian_outage(double beta_top, double mean, double sigma);

/// Largest beta_top in [0, mean) whose outage_probability does not exceed the
/// target, by bisection to 1e-9 relative tolerance. Returns the mean when
/// sigma == 0 or when the target is met all the way up to the mean.
double gain_threshold(double target, double mean, double sigma);

/// Large-array limit of the iSNR with stationary attenuation:
/// kappa / (1 + kappa) * snr.
double asymptotic_isnr(const RicianFactor& rician_k, double snr);

}  // namespace elaa
