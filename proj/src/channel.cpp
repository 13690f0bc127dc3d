#include "elaa/channel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "elaa/error.hpp"
#include "elaa/random.hpp"

namespace elaa {

RicianFactor::RicianFactor(double k)
{
    if (std::isnan(k) || k < 0.0) {
        throw ParameterError("rician_k", "must be nonnegative or inf");
    }
    if (std::isinf(k)) {
        infinite_ = true;
    } else {
        k_ = k;
    }
}

RicianFactor RicianFactor::infinite() noexcept
{
    RicianFactor k;
    k.infinite_ = true;
    return k;
}

double RicianFactor::value() const noexcept
{
    return infinite_ ? std::numeric_limits<double>::infinity() : k_;
}

double RicianFactor::los_power() const noexcept
{
    return infinite_ ? 1.0 : k_ / (1.0 + k_);
}

double RicianFactor::nlos_power() const noexcept
{
    return infinite_ ? 0.0 : 1.0 / (1.0 + k_);
}

std::string to_string(const RicianFactor& k)
{
    if (k.is_infinite()) {
        return "inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", k.value());
    return buf;
}

void ChannelParams::validate() const
{
    if (!(half_exponent > 0.0) || !std::isfinite(half_exponent)) {
        throw ParameterError("half_exponent", "must be positive");
    }
    if (!(reference_gain > 0.0) || !std::isfinite(reference_gain)) {
        throw ParameterError("reference_gain", "must be positive");
    }
    if (reference_distance && (!(*reference_distance > 0.0) || !std::isfinite(*reference_distance))) {
        throw ParameterError("reference_distance", "must be positive");
    }
}

double ChannelParams::perpendicular_gain(double d_perp) const
{
    if (reference_distance) {
        return std::pow(*reference_distance / d_perp, half_exponent);
    }
    return reference_gain;
}

double path_gain(double d, double d_perp, const ChannelParams& params)
{
    if (!(d_perp > 0.0) || d < d_perp) {
        throw std::domain_error("path_gain: distance shorter than the perpendicular distance");
    }
    return params.perpendicular_gain(d_perp) * std::pow(d_perp / d, params.half_exponent);
}

Complex steering_phase(double d, double wavelength)
{
    const double cycles = d / wavelength;
    const double frac = cycles - std::floor(cycles);
    const double angle = 2.0 * std::numbers::pi * frac;
    return {std::cos(angle), -std::sin(angle)};
}

ChannelSampler::ChannelSampler(const ClusterSelection& cluster, const UserLocation& user,
                               const ChannelParams& params)
    : rician_k_(params.rician_k)
{
    const std::size_t m_total = cluster.element_count();
    attenuations_.reserve(m_total);
    los_phases_.reserve(m_total);
    for (std::size_t k = 0; k < cluster.size(); ++k) {
        const double alpha =
            path_gain(element_distance(cluster.ap_centers[k], user), user.y, params);
        for (std::size_t e = 0; e < cluster.antennas_per_ap; ++e) {
            const double x = cluster.element_positions[k * cluster.antennas_per_ap + e];
            attenuations_.push_back(alpha);
            los_phases_.push_back(steering_phase(element_distance(x, user), cluster.wavelength));
        }
    }
}

ChannelSampler::ChannelSampler(std::vector<double> attenuations, std::vector<Complex> los_phases,
                               RicianFactor rician_k)
    : attenuations_(std::move(attenuations)),
      los_phases_(std::move(los_phases)),
      rician_k_(rician_k)
{
    if (attenuations_.size() != los_phases_.size()) {
        throw std::invalid_argument("ChannelSampler: attenuation/phase length mismatch");
    }
}

void ChannelSampler::draw(std::uint64_t seed, std::uint64_t trial, ChannelRealization& out) const
{
    const std::size_t n = attenuations_.size();
    out.attenuations = attenuations_;
    out.los_phases = los_phases_;
    out.gains.resize(n);
    out.nlos_draws.resize(n);

    if (rician_k_.is_infinite()) {
        for (std::size_t m = 0; m < n; ++m) {
            out.nlos_draws[m] = Complex{};
            out.gains[m] = attenuations_[m] * los_phases_[m];
        }
        return;
    }

    const double los = std::sqrt(rician_k_.los_power());
    const double nlos = std::sqrt(rician_k_.nlos_power());
    const CounterRng rng(seed, trial);
    for (std::size_t m = 0; m < n; ++m) {
        const Complex nu = rng.complex_normal(m);
        out.nlos_draws[m] = nu;
        out.gains[m] = attenuations_[m] * (los * los_phases_[m] + nlos * nu);
    }
}

ChannelRealization ChannelSampler::draw(std::uint64_t seed, std::uint64_t trial) const
{
    ChannelRealization out;
    draw(seed, trial, out);
    return out;
}

ChannelRealization draw_channel(const ClusterSelection& cluster, const UserLocation& user,
                                const ChannelParams& params, std::uint64_t seed,
                                std::uint64_t trial)
{
    return ChannelSampler(cluster, user, params).draw(seed, trial);
}

}  // namespace elaa
