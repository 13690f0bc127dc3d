#pragma once

#include <cstddef>
#include <vector>

#include "elaa/channel.hpp"
#include "elaa/geometry.hpp"

namespace elaa {

/// Unit-modulus transmit weights, one per active element.
struct BeamWeights {
    std::vector<Complex> weights;

    std::size_t size() const { return weights.size(); }
};

/// Total transmit power and receiver noise power, both in watts. The total
/// is split evenly over the active elements.
struct LinkBudget {
    double total_power = 1.0;
    double noise_power = 1.0;

    void validate() const;
    double snr() const { return total_power / noise_power; }
};

/// Geo-location-aware beam: conjugate LoS phase of every element. Depends on
/// the user position only, never on fading coefficients.
BeamWeights los_beamformer(const ClusterSelection& cluster, const UserLocation& user,
                           double wavelength);

/// Same beam built from an explicit list of LoS phases.
BeamWeights conjugate_beam(const std::vector<Complex>& los_phases);

/// |h^T w|^2. Throws std::invalid_argument on a length mismatch.
double instantaneous_gain(const ChannelRealization& h, const BeamWeights& w);

double normalized_gain(double beta, std::size_t element_count);

/// iSNR under the fixed total-power constraint: beta_bar * P / sigma^2.
double isnr(double beta_bar, const LinkBudget& budget);

}  // namespace elaa
