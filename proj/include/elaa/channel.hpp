#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elaa/geometry.hpp"

namespace elaa {

using Complex = std::complex<double>;

/// Rician K-factor. Infinity is a distinct state (pure LoS), never a large
/// finite stand-in, so the LoS/NLoS power split is exact at both ends.
class RicianFactor {
public:
    constexpr RicianFactor() = default;
    /// Accepts any k >= 0, including +infinity. Throws ParameterError otherwise.
    explicit RicianFactor(double k);

    static RicianFactor infinite() noexcept;

    bool is_infinite() const noexcept { return infinite_; }
    double value() const noexcept;

    /// kappa / (1 + kappa); 1 at infinity.
    double los_power() const noexcept;
    /// 1 / (1 + kappa); 0 at infinity.
    double nlos_power() const noexcept;

    friend bool operator==(const RicianFactor&, const RicianFactor&) = default;

private:
    double k_ = 0.0;
    bool infinite_ = false;
};

std::string to_string(const RicianFactor& k);

struct ChannelParams {
    RicianFactor rician_k = RicianFactor(5.0);
    double half_exponent = 1.0;  // q; path-loss exponent is 2q
    double reference_gain = 1.0;  // attenuation at the perpendicular distance
    /// When set, attenuation is absolute: alpha(d) = (reference_distance / d)^q.
    std::optional<double> reference_distance;

    void validate() const;

    /// Attenuation at the foot of the perpendicular.
    double perpendicular_gain(double d_perp) const;
};

/// Path-loss amplitude at distance d for a user whose perpendicular distance
/// to the array is d_perp.
double path_gain(double d, double d_perp, const ChannelParams& params);

/// exp(-j 2 pi d / lambda), with the cycle count reduced before the
/// trigonometric call.
Complex steering_phase(double d, double wavelength);

struct ChannelRealization {
    std::vector<Complex> gains;
    std::vector<double> attenuations;
    std::vector<Complex> los_phases;
    std::vector<Complex> nlos_draws;

    std::size_t size() const { return gains.size(); }
};

/// Holds the deterministic part of a channel (attenuations and LoS phases)
/// and fills in the random NLoS part per trial.
class ChannelSampler {
public:
    /// Attenuation per element uses the AP-center distance; the phase uses
    /// the exact element distance.
    ChannelSampler(const ClusterSelection& cluster, const UserLocation& user,
                   const ChannelParams& params);

    /// Arbitrary deterministic part, e.g. a stationary array.
    ChannelSampler(std::vector<double> attenuations, std::vector<Complex> los_phases,
                   RicianFactor rician_k);

    void draw(std::uint64_t seed, std::uint64_t trial, ChannelRealization& out) const;
    ChannelRealization draw(std::uint64_t seed, std::uint64_t trial = 0) const;

    std::size_t size() const { return attenuations_.size(); }
    const std::vector<double>& attenuations() const { return attenuations_; }
    const std::vector<Complex>& los_phases() const { return los_phases_; }
    const RicianFactor& rician_k() const { return rician_k_; }

private:
    std::vector<double> attenuations_;
    std::vector<Complex> los_phases_;
    RicianFactor rician_k_;
};

ChannelRealization draw_channel(const ClusterSelection& cluster, const UserLocation& user,
                                const ChannelParams& params, std::uint64_t seed,
                                std::uint64_t trial = 0);

}  // namespace elaa
