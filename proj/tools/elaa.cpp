// elaa: command-line front end for cluster-size optimization, coverage and
// Monte Carlo checks on a networked linear array.
//
//   elaa <command> [--config PATH] [--set key=value]... [--seed N] [--out DIR] [--threads N]
//
// Exit codes: 0 ok, 2 usage, 3 config, 4 I/O.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elaa/commands.hpp"
#include "elaa/config.hpp"
#include "elaa/error.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;

std::string command_list()
{
    std::string out;
    for (auto name : elaa::command_names()) {
        out += "  ";
        out += name;
        out += '\n';
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cluster-size optimization and coverage analysis for networked linear arrays"};
    app.footer("Commands:\n" + command_list());

    std::string command;
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<unsigned> threads;

    app.add_option("command", command, "Command to run")->required();
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--set", sets, "Dotted override, e.g. channel.rician_k=inf (repeatable)")
        ->take_all();
    app.add_option("--seed", seed, "Master seed (overrides config and ELAA_SEED)");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--threads", threads, "Worker threads, 0 = all cores");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const auto& names = elaa::command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        std::cerr << "elaa: unknown command '" << command << "'\n\n" << app.help();
        return kExitUsage;
    }

    std::vector<std::string> overrides = sets;
    if (seed) {
        overrides.push_back("experiment.seed=" + std::to_string(*seed));
    }
    if (out_dir) {
        overrides.push_back("experiment.out_dir=" + nlohmann::json(*out_dir).dump());
    }
    if (threads) {
        overrides.push_back("experiment.threads=" + std::to_string(*threads));
    }
    std::vector<std::string> fallbacks;
    if (const char* env = std::getenv("ELAA_SEED"); env != nullptr && *env != '\0') {
        fallbacks.push_back(std::string("experiment.seed=") + env);
    }

    elaa::RunConfig cfg;
    try {
        std::optional<std::filesystem::path> path;
        if (!config_path.empty()) {
            path = config_path;
        }
        cfg = elaa::load_config(path, overrides, fallbacks);
    } catch (const elaa::ConfigError& e) {
        std::cerr << "elaa: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const elaa::ParameterError& e) {
        std::cerr << "elaa: invalid parameter " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        std::cerr << "elaa: running " << command << " (seed " << cfg.experiment.seed << ")\n";
        const auto result = elaa::run_command(command, cfg);
        for (const auto& w : result.table.warnings) {
            std::cerr << "elaa: warning: " << w << '\n';
        }
        std::cerr << "elaa: wrote " << result.csv.string() << " (" << result.table.rows.size()
                  << " rows) and " << result.metadata.string() << '\n';
    } catch (const elaa::ParameterError& e) {
        std::cerr << "elaa: invalid parameter " << e.what() << '\n';
        return kExitConfig;
    } catch (const elaa::OutputError& e) {
        std::cerr << "elaa: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "elaa: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    return 0;
}
