#include "elaa/beamforming.hpp"

#include <cmath>
#include <stdexcept>

#include "elaa/error.hpp"

namespace elaa {

void LinkBudget::validate() const
{
    if (!(total_power > 0.0) || !std::isfinite(total_power)) {
        throw ParameterError("total_power", "must be positive");
    }
    if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
        throw ParameterError("noise_power", "must be positive");
    }
}

BeamWeights los_beamformer(const ClusterSelection& cluster, const UserLocation& user,
                           double wavelength)
{
    BeamWeights w;
    w.weights.reserve(cluster.element_count());
    for (double x : cluster.element_positions) {
        w.weights.push_back(std::conj(steering_phase(element_distance(x, user), wavelength)));
    }
    return w;
}

BeamWeights conjugate_beam(const std::vector<Complex>& los_phases)
{
    BeamWeights w;
    w.weights.reserve(los_phases.size());
    for (const auto& phi : los_phases) {
        w.weights.push_back(std::conj(phi));
    }
    return w;
}

double instantaneous_gain(const ChannelRealization& h, const BeamWeights& w)
{
    if (h.gains.size() != w.weights.size()) {
        throw std::invalid_argument("instantaneous_gain: channel has " +
                                    std::to_string(h.gains.size()) + " elements, beam has " +
                                    std::to_string(w.weights.size()));
    }
    Complex acc{};
    for (std::size_t m = 0; m < w.weights.size(); ++m) {
        acc += h.gains[m] * w.weights[m];
    }
    return std::norm(acc);
}

double normalized_gain(double beta, std::size_t element_count)
{
    if (element_count < 1) {
        throw std::invalid_argument("normalized_gain: element count must be at least 1");
    }
    return beta / static_cast<double>(element_count);
}

double isnr(double beta_bar, const LinkBudget& budget)
{
    return beta_bar * budget.snr();
}

}  // namespace elaa
