#include "elaa/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <system_error>

#include "elaa/analytics.hpp"
#include "elaa/coverage.hpp"
#include "elaa/montecarlo.hpp"
#include "elaa/optimizer.hpp"
#include "elaa/parallel.hpp"
#include "elaa/version.hpp"

namespace elaa {

namespace {

std::string num(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num(std::size_t v)
{
    return std::to_string(v);
}

std::size_t steps_between(double lo, double hi, double step)
{
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

Table gain_profile(const RunConfig& cfg)
{
    const auto& p = cfg.profile;
    const std::size_t nx = steps_between(p.x_start, p.x_end, p.x_step);
    const std::size_t per_y = nx * p.services.size();
    const std::size_t total = per_y * p.y_values.size();
    const auto options = cfg.analysis_options();
    const std::size_t max_cluster = options.resolved_max_cluster(cfg.array);

    std::vector<ClusterResult> results(total);
    parallel_for(total, cfg.experiment.threads, [&](std::size_t i) {
        const double y = p.y_values[i / per_y];
        const ServiceKind kind = p.services[(i % per_y) / nx];
        const double x = p.x_start + static_cast<double>(i % nx) * p.x_step;
        ServiceSpec service = cfg.service;
        service.kind = kind;
        results[i] = optimize_cluster({x, y}, cfg.array, cfg.channel, service, max_cluster,
                                      options.mode);
    });

    Table t;
    t.columns = {"x_r", "y_r", "service", "best_L", "objective_db"};
    for (std::size_t i = 0; i < total; ++i) {
        const double y = p.y_values[i / per_y];
        const ServiceKind kind = p.services[(i % per_y) / nx];
        const double x = p.x_start + static_cast<double>(i % nx) * p.x_step;
        t.rows.push_back({num(x), num(y), std::string(to_string(kind)), num(results[i].best_L),
                          num(to_db(results[i].objective))});
    }
    const auto window = central_window(cfg.array, cfg.experiment.central_window);
    if (p.x_start < window.lo || p.x_end > window.hi) {
        t.warnings.push_back("profile leaves the central window; edge effects may show");
    }
    return t;
}

Table optimize_map(const RunConfig& cfg)
{
    const auto map = gain_map(cfg.map.extent, cfg.map.resolution, cfg.service, cfg.array,
                              cfg.channel, cfg.analysis_options());
    Table t;
    t.columns = {"x_r", "y_r", "best_L", "objective", "objective_db"};
    for (const auto& c : map.cells) {
        t.rows.push_back({num(c.x), num(c.y), num(c.best_L), num(c.objective), num(c.objective_db)});
    }
    t.details["nx"] = map.nx;
    t.details["ny"] = map.ny;
    t.details["edge_warning"] = map.edge_warning;
    if (map.edge_warning) {
        t.warnings.push_back("map extent leaves the central window; edge effects may show");
    }
    return t;
}

Table coverage(const RunConfig& cfg)
{
    CoverageSpec spec;
    spec.x_start = cfg.coverage.x_start;
    spec.y_values = cfg.coverage.y_values;
    spec.quadrature_points = cfg.coverage.quadrature_points;
    spec.service = cfg.service;
    spec.model = cfg.coverage.model;
    std::vector<double> reqs;
    for (double db : cfg.coverage.required_gains_db) {
        reqs.push_back(from_db(db));
    }
    const auto curve = coverage_curve(spec, reqs, cfg.array, cfg.channel, cfg.analysis_options());
    Table t;
    t.columns = {"y_r", "beta_req", "mode", "p_cov"};
    for (const auto& pt : curve) {
        t.rows.push_back({num(pt.y), num(pt.required_gain), std::string(to_string(pt.policy)),
                          num(pt.p_cov)});
    }
    t.details["beta_req_units"] = "linear";
    return t;
}

Table outage(const RunConfig& cfg)
{
    const auto& o = cfg.outage;
    const UserLocation user{o.x, o.y};
    const auto profile =
        cluster_profiles(user, cfg.array, cfg.channel, o.cluster_size, EvaluationMode::Geometric)
            .back();
    const auto model = gain_model_for(user, cfg.array, cfg.channel);
    const double mean = mean_gain(profile, model);
    const double sigma = std::sqrt(fluct_variance(profile, model));

    std::vector<double> thresholds;
    for (double target : o.targets) {
        thresholds.push_back(gain_threshold(target, mean, sigma));
    }

    TrialPlan plan;
    plan.trials = o.trials;
    plan.master_seed = cfg.experiment.seed;
    plan.threads = cfg.experiment.threads;
    plan.scenario = make_scenario(user, o.cluster_size, cfg.array, cfg.channel, cfg.budget);
    const auto empirical = empirical_outage(plan, thresholds);

    Table t;
    t.columns = {"beta_top", "eq24", "gaussian_cdf", "empirical", "trials"};
    nlohmann::ordered_json std_errors = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double b = thresholds[i];
        // At the mean the closed form is its left limit.
        const double closed = b < mean ? outage_probability(b, mean, sigma)
                                       : std::min(1.0, sigma > 0.0 ? mean / (2.0 * std::sqrt(2.0 * std::numbers::pi) * sigma) : 0.0);
        t.rows.push_back({num(b), num(closed), num(gaussian_outage(b, mean, sigma)),
                          num(empirical[i].probability), num(empirical[i].trials)});
        std_errors.push_back(empirical[i].std_error);
    }
    t.details["mean_gain"] = mean;
    t.details["fluct_std"] = sigma;
    t.details["empirical_std_error"] = std_errors;
    return t;
}

Table theorem(const RunConfig& cfg)
{
    TrialPlan plan;
    plan.trials = cfg.theorem.trials;
    plan.master_seed = cfg.experiment.seed;
    plan.threads = cfg.experiment.threads;
    plan.scenario.cluster.wavelength = cfg.array.wavelength;
    const double snr = cfg.budget.snr();
    const double analytic = asymptotic_isnr(cfg.channel.rician_k, snr);

    Table t;
    t.columns = {"M", "empirical_isnr", "analytic"};
    nlohmann::ordered_json std_errors = nlohmann::ordered_json::array();
    for (auto m : cfg.theorem.element_counts) {
        const auto stat = stationary_isnr(m, cfg.channel.rician_k, snr, plan);
        t.rows.push_back({num(m), num(stat.mean), num(analytic)});
        std_errors.push_back(stat.std_error);
    }
    t.details["empirical_std_error"] = std_errors;
    return t;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw OutputError("write to '" + path.string() + "' failed");
    }
}

}  // namespace

const std::vector<std::string_view>& command_names()
{
    static const std::vector<std::string_view> names = {
        "gain-profile", "optimize-map", "coverage-curve", "outage-check", "theorem-check"};
    return names;
}

Table run_table(std::string_view command, const RunConfig& cfg)
{
    cfg.validate();
    if (command == "gain-profile") {
        return gain_profile(cfg);
    }
    if (command == "optimize-map") {
        return optimize_map(cfg);
    }
    if (command == "coverage-curve") {
        return coverage(cfg);
    }
    if (command == "outage-check") {
        return outage(cfg);
    }
    if (command == "theorem-check") {
        return theorem(cfg);
    }
    throw UnknownCommand("unknown command '" + std::string(command) + "'");
}

std::string to_csv(const Table& table)
{
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    line(table.columns);
    for (const auto& row : table.rows) {
        line(row);
    }
    return out;
}

CommandOutput run_command(std::string_view command, const RunConfig& cfg)
{
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        throw UnknownCommand("unknown command '" + std::string(command) + "'");
    }
    const std::filesystem::path dir = cfg.experiment.out_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw OutputError("cannot create output directory '" + dir.string() + "'");
    }

    const auto start = std::chrono::steady_clock::now();
    CommandOutput result;
    result.table = run_table(command, cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    result.csv = dir / (std::string(command) + ".csv");
    result.metadata = dir / (std::string(command) + ".json");
    write_text(result.csv, to_csv(result.table));

    nlohmann::ordered_json meta;
    meta["command"] = std::string(command);
    meta["version"] = kVersion;
    meta["csv_schema_version"] = kCsvSchemaVersion;
    meta["columns"] = result.table.columns;
    meta["rows"] = result.table.rows.size();
    meta["seed"] = cfg.experiment.seed;
    meta["threads"] = resolve_threads(cfg.experiment.threads);
    meta["wall_time_s"] = elapsed.count();
    meta["details"] = result.table.details;
    meta["warnings"] = result.table.warnings;
    meta["config"] = to_json(cfg);
    write_text(result.metadata, meta.dump(2) + "\n");
    return result;
}

}  // namespace elaa
