#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "elaa/beamforming.hpp"
#include "elaa/channel.hpp"
#include "elaa/coverage.hpp"
#include "elaa/geometry.hpp"
#include "elaa/optimizer.hpp"

namespace elaa {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Malformed configuration text or override syntax. Invariant violations
/// are reported as ParameterError instead.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentSettings {
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::string out_dir = "results";
    std::size_t max_cluster = 0;  // 0 = every AP
    EvaluationMode mode = EvaluationMode::Geometric;
    double central_window = 0.5;
};

// gain-profile: optimum cluster size and objective along x at a few heights.
struct ProfileSettings {
    std::vector<double> y_values{3.0, 10.0, 20.0};
    double x_start = 630.0;
    double x_end = 650.0;
    double x_step = 0.25;
    std::vector<ServiceKind> services{ServiceKind::Embb, ServiceKind::Urllc};
};

struct MapSettings {
    MapExtent extent{630.0, 650.0, 1.0, 40.0};
    double resolution = 0.5;
};

struct CoverageSettings {
    double x_start = 640.0;
    std::vector<double> y_values{5.0, 10.0, 20.0, 40.0};
    std::vector<double> required_gains_db{0.0,  2.0,  4.0,  6.0,  8.0,  10.0, 12.0,
                                          14.0, 16.0, 18.0, 20.0, 22.0, 24.0};
    std::size_t quadrature_points = 256;
    ExceedanceModel model = ExceedanceModel::ServiceObjective;
};

// outage-check: a single AP-above user with an L-AP cluster; beta_top is
// placed where the closed-form outage equals each target.
struct OutageSettings {
    double x = 640.0;
    double y = 10.0;
    std::size_t cluster_size = 1;
    std::vector<double> targets{1e-2, 1e-3};
    std::size_t trials = 1000000;
};

struct TheoremSettings {
    std::vector<std::size_t> element_counts{1, 4, 16, 64, 256, 1024, 4096};
    std::size_t trials = 10000;
};

struct RunConfig {
    ArrayConfig array;
    /// Carrier frequency in Hz; sets the wavelength unless one is given.
    double carrier_frequency = 3.5e9;
    ChannelParams channel;
    ServiceSpec service;
    LinkBudget budget;
    ExperimentSettings experiment;
    ProfileSettings profile;
    MapSettings map;
    CoverageSettings coverage;
    OutageSettings outage;
    TheoremSettings theorem;

    /// Throws ParameterError with a dotted field name.
    void validate() const;

    AnalysisOptions analysis_options() const;
};

/// Parses JSON text. Missing keys keep their defaults, unknown keys are
/// rejected. `source` labels parse errors ("<file>:<line>:<col>").
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Loads an optional config file, then applies "dotted.key=value" overrides
/// in order. Values are read as JSON when they parse as JSON and as plain
/// strings otherwise, so rician_k=inf and service.kind=URLLC both work.
/// `fallbacks` use the same syntax but only fill keys that neither the file
/// nor an override sets (environment defaults).
RunConfig load_config(const std::optional<std::filesystem::path>& path,
                      std::span<const std::string> overrides = {},
                      std::span<const std::string> fallbacks = {});

/// Fully resolved config, including the derived wavelength.
nlohmann::ordered_json to_json(const RunConfig& cfg);

}  // namespace elaa
