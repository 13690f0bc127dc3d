#include "elaa/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace elaa {

namespace {

void require_cluster(std::size_t cluster_size)
{
    if (cluster_size < 1) {
        throw std::invalid_argument("cluster size must be at least 1");
    }
}

// Sum of (1 + l^2 eta)^(-exponent) over l in [0, L).
double attenuation_power_sum(std::size_t cluster_size, double eta, double exponent)
{
    double sum = 0.0;
    for (std::size_t l = 0; l < cluster_size; ++l) {
        const double ld = static_cast<double>(l);
        sum += std::pow(1.0 + ld * ld * eta, -exponent);
    }
    return sum;
}

}  // namespace

double eta_for(double ap_spacing, double d_perp)
{
    const double ratio = ap_spacing / d_perp;
    return ratio * ratio;
}

double g_function(std::size_t cluster_size, double eta, double q)
{
    require_cluster(cluster_size);
    return attenuation_power_sum(cluster_size, eta, q / 2.0) /
           std::sqrt(static_cast<double>(cluster_size));
}

double gamma_function(std::size_t cluster_size, double eta, double q)
{
    require_cluster(cluster_size);
    return attenuation_power_sum(cluster_size, eta, q) / static_cast<double>(cluster_size);
}

AttenuationProfile analytic_profile(std::size_t cluster_size, double eta, double q)
{
    return {cluster_size, g_function(cluster_size, eta, q), gamma_function(cluster_size, eta, q)};
}

AttenuationProfile profile_from_ratios(std::span<const double> ratios)
{
    require_cluster(ratios.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double r : ratios) {
        sum += r;
        sum_sq += r * r;
    }
    const auto n = static_cast<double>(ratios.size());
    return {ratios.size(), sum / std::sqrt(n), sum_sq / n};
}

double concavity_threshold(double q)
{
    if (!(q > 0.0)) {
        throw std::invalid_argument("concavity_threshold: q must be positive");
    }
    return std::pow(std::numbers::sqrt2 + 1.0, 2.0 / q) - 1.0;
}

std::string_view to_string(GainShape shape)
{
    return shape == GainShape::Concave ? "concave" : "monotone_decreasing";
}

GainShape classify_g(double eta, double q)
{
    return eta < concavity_threshold(q) ? GainShape::Concave : GainShape::MonotoneDecreasing;
}

double los_gain_approx(const AttenuationProfile& profile, const GainModel& model)
{
    const double a2 = model.perpendicular_gain * model.perpendicular_gain;
    return model.rician_k.los_power() * a2 * static_cast<double>(model.antennas_per_ap) *
           profile.g * profile.g;
}

double mean_gain(const AttenuationProfile& profile, const GainModel& model)
{
    const double a2 = model.perpendicular_gain * model.perpendicular_gain;
    return los_gain_approx(profile, model) + model.rician_k.nlos_power() * a2 * profile.gamma;
}

double fluct_variance(const AttenuationProfile& profile, const GainModel& model)
{
    const double a2 = model.perpendicular_gain * model.perpendicular_gain;
    const double g2 = profile.g * profile.g;
    return 2.0 * model.rician_k.los_power() * model.rician_k.nlos_power() * a2 * a2 *
           static_cast<double>(model.antennas_per_ap) * g2 * profile.gamma;
}

double exact_gain_variance(const AttenuationProfile& profile, const GainModel& model)
{
    const double a2 = model.perpendicular_gain * model.perpendicular_gain;
    const double nlos_mean = model.rician_k.nlos_power() * a2 * profile.gamma;
    return fluct_variance(profile, model) + nlos_mean * nlos_mean;
}

double los_gain_approx(std::size_t cluster_size, double eta, double q, const GainModel& model)
{
    return los_gain_approx(analytic_profile(cluster_size, eta, q), model);
}

double mean_gain(std::size_t cluster_size, double eta, double q, const GainModel& model)
{
    return mean_gain(analytic_profile(cluster_size, eta, q), model);
}

double fluct_variance(std::size_t cluster_size, double eta, double q, const GainModel& model)
{
    return fluct_variance(analytic_profile(cluster_size, eta, q), model);
}

GainStats gain_stats(std::size_t cluster_size, double eta, double q, const GainModel& model)
{
    const auto profile = analytic_profile(cluster_size, eta, q);
    GainStats s;
    s.eta = eta;
    s.g_value = profile.g;
    s.gamma_value = profile.gamma;
    s.mean_gain = mean_gain(profile, model);
    s.fluct_variance = fluct_variance(profile, model);
    s.los_component = los_gain_approx(profile, model);
    s.cluster_size = cluster_size;
    return s;
}

double outage_probability(double beta_top, double mean, double sigma)
{
    if (!(beta_top >= 0.0) || !(beta_top < mean)) {
        throw std::domain_error("outage_probability: threshold must lie in [0, mean)");
    }
    if (sigma <= 0.0) {
        return 0.0;
    }
    const double dev = beta_top - mean;
    const double p = beta_top / (2.0 * std::sqrt(2.0 * std::numbers::pi) * sigma) *
                     std::exp(-dev * dev / (2.0 * sigma * sigma));
    return std::clamp(p, 0.0, 1.0);
}

double gaussian_outage(double beta_top, double mean, double sigma)
{
    if (sigma <= 0.0) {
        return beta_top > mean ? 1.0 : 0.0;
    }
    return 0.5 * std::erfc((mean - beta_top) / (sigma * std::numbers::sqrt2));
}

double gain_threshold(double target, double mean, double sigma)
{
    if (!(target > 0.0 && target < 1.0)) {
        throw std::invalid_argument("gain_threshold: target must lie in (0, 1)");
    }
    if (sigma <= 0.0 || !(mean > 0.0)) {
        return std::max(mean, 0.0);
    }
    // The rectangle-rule outage rises monotonically to mean / (2 sqrt(2 pi) sigma)
    // as beta_top approaches the mean.
    if (mean / (2.0 * std::sqrt(2.0 * std::numbers::pi) * sigma) <= target) {
        return mean;
    }
    double lo = 0.0;
    double hi = mean;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (outage_probability(mid, mean, sigma) <= target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (lo > 0.0 && hi - lo <= 1e-9 * lo) {
            break;
        }
    }
    return lo;
}

double asymptotic_isnr(const RicianFactor& rician_k, double snr)
{
    return rician_k.los_power() * snr;
}

}  // namespace elaa
