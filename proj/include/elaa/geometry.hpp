#pragma once

#include <cstddef>
#include <vector>

namespace elaa {

/// Physical layout of a networked linear array: equally spaced APs on the
/// x-axis, each carrying a half-wavelength ULA.
struct ArrayConfig {
    std::size_t total_aps = 128;
    double ap_spacing = 10.0;  // meters
    std::size_t antennas_per_ap = 8;
    double wavelength = 299792458.0 / 3.5e9;  // meters

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    double span() const { return static_cast<double>(total_aps - 1) * ap_spacing; }
};

/// A user on the 2D plane. The array lies on y = 0, so y is the
/// perpendicular distance to the array line.
struct UserLocation {
    double x = 0.0;
    double y = 1.0;

    void validate() const;
};

/// The APs chosen to serve one user, with their element coordinates laid out
/// AP by AP (elements of ap_indices[k] occupy
/// [k * antennas_per_ap, (k + 1) * antennas_per_ap)).
struct ClusterSelection {
    std::vector<std::size_t> ap_indices;
    std::vector<double> ap_centers;
    std::vector<double> element_positions;
    std::size_t antennas_per_ap = 1;
    double wavelength = 0.0;

    std::size_t size() const { return ap_indices.size(); }
    std::size_t element_count() const { return element_positions.size(); }
};

std::vector<double> ap_positions(const ArrayConfig& cfg);

/// Element x-coordinates of one AP, centered on the AP with lambda/2 spacing.
std::vector<double> antenna_positions(std::size_t ap_index, const ArrayConfig& cfg);

double element_distance(double element_x, const UserLocation& user);

/// AP indices ordered by increasing |ap_position - x|, ties toward the lower
/// index. Every prefix of length L is the nearest-L cluster.
std::vector<std::size_t> nearest_ap_order(double x, const ArrayConfig& cfg);

/// The L APs nearest to the user's foot point, returned in ascending index
/// order.
ClusterSelection select_cluster(const UserLocation& user, std::size_t cluster_size,
                                const ArrayConfig& cfg);

/// Builds a selection from an explicit list of AP indices.
ClusterSelection make_cluster(std::vector<std::size_t> ap_indices, const ArrayConfig& cfg);

}  // namespace elaa
