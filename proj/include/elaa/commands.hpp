#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "elaa/config.hpp"

namespace elaa {

class UnknownCommand : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Output directory or file could not be written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// gain-profile, optimize-map, coverage-curve, outage-check, theorem-check.
const std::vector<std::string_view>& command_names();

/// Result of one command before it touches the filesystem. Cells are already
/// formatted so the CSV text is a pure function of (config, seed).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;
};

Table run_table(std::string_view command, const RunConfig& cfg);

std::string to_csv(const Table& table);

struct CommandOutput {
    std::filesystem::path csv;
    std::filesystem::path metadata;
    Table table;
};

/// Runs the command and writes <out_dir>/<command>.csv plus a JSON sidecar
/// holding the resolved config, seed, version and wall time.
/// Throws UnknownCommand, ParameterError or OutputError.
CommandOutput run_command(std::string_view command, const RunConfig& cfg);

}  // namespace elaa
