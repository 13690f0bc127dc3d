#include "elaa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "elaa/error.hpp"

namespace elaa {

void ArrayConfig::validate() const
{
    if (total_aps < 1) {
        throw ParameterError("total_aps", "must be at least 1");
    }
    if (antennas_per_ap < 1) {
        throw ParameterError("antennas_per_ap", "must be at least 1");
    }
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
        throw ParameterError("wavelength", "must be positive and finite");
    }
    if (!(ap_spacing > 0.0) || !std::isfinite(ap_spacing)) {
        throw ParameterError("ap_spacing", "must be positive and finite");
    }
    // Attenuation is shared by co-located elements only when APs are far
    // apart relative to the carrier wavelength.
    if (ap_spacing < 100.0 * wavelength) {
        throw ParameterError("ap_spacing", "must be at least 100 wavelengths");
    }
}

void UserLocation::validate() const
{
    if (!std::isfinite(x)) {
        throw ParameterError("user.x", "must be finite");
    }
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw ParameterError("user.y", "must be strictly positive (user off the array line)");
    }
}

std::vector<double> ap_positions(const ArrayConfig& cfg)
{
    std::vector<double> out(cfg.total_aps);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<double>(i) * cfg.ap_spacing;
    }
    return out;
}

std::vector<double> antenna_positions(std::size_t ap_index, const ArrayConfig& cfg)
{
    if (ap_index >= cfg.total_aps) {
        throw std::out_of_range("antenna_positions: AP index " + std::to_string(ap_index) +
                                " out of range");
    }
    const double center = static_cast<double>(ap_index) * cfg.ap_spacing;
    const double half_step = cfg.wavelength / 2.0;
    const double offset = static_cast<double>(cfg.antennas_per_ap - 1) / 2.0;
    std::vector<double> out(cfg.antennas_per_ap);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = center + (static_cast<double>(k) - offset) * half_step;
    }
    return out;
}

double element_distance(double element_x, const UserLocation& user)
{
    return std::hypot(element_x - user.x, user.y);
}

std::vector<std::size_t> nearest_ap_order(double x, const ArrayConfig& cfg)
{
    std::vector<std::size_t> order(cfg.total_aps);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto offset = [&](std::size_t i) {
        return std::abs(static_cast<double>(i) * cfg.ap_spacing - x);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return offset(a) < offset(b); });
    return order;
}

ClusterSelection make_cluster(std::vector<std::size_t> ap_indices, const ArrayConfig& cfg)
{
    ClusterSelection sel;
    sel.antennas_per_ap = cfg.antennas_per_ap;
    sel.wavelength = cfg.wavelength;
    sel.ap_centers.reserve(ap_indices.size());
    sel.element_positions.reserve(ap_indices.size() * cfg.antennas_per_ap);
    for (std::size_t k = 0; k < ap_indices.size(); ++k) {
        const auto idx = ap_indices[k];
        if (idx >= cfg.total_aps) {
            throw std::out_of_range("make_cluster: AP index " + std::to_string(idx) +
                                    " out of range");
        }
        if (std::find(ap_indices.begin(), ap_indices.begin() + static_cast<std::ptrdiff_t>(k),
                      idx) != ap_indices.begin() + static_cast<std::ptrdiff_t>(k)) {
            throw std::invalid_argument("make_cluster: duplicate AP index " +
                                        std::to_string(idx));
        }
        sel.ap_centers.push_back(static_cast<double>(idx) * cfg.ap_spacing);
        const auto elems = antenna_positions(idx, cfg);
        sel.element_positions.insert(sel.element_positions.end(), elems.begin(), elems.end());
    }
    sel.ap_indices = std::move(ap_indices);
    return sel;
}

ClusterSelection select_cluster(const UserLocation& user, std::size_t cluster_size,
                                const ArrayConfig& cfg)
{
    if (cluster_size < 1 || cluster_size > cfg.total_aps) {
        throw std::out_of_range("select_cluster: cluster size " + std::to_string(cluster_size) +
                                " outside [1, " + std::to_string(cfg.total_aps) + "]");
    }
    auto order = nearest_ap_order(user.x, cfg);
    order.resize(cluster_size);
    std::sort(order.begin(), order.end());
    return make_cluster(std::move(order), cfg);
}

}  // namespace elaa
