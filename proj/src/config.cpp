#include "elaa/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "elaa/error.hpp"

namespace elaa {

using nlohmann::json;

namespace {

std::string join(const std::string& section, const std::string& key)
{
    return section.empty() ? key : section + "." + key;
}

double read_number(const json& j, const std::string& field)
{
    if (!j.is_number()) {
        throw ParameterError(field, "expected a number");
    }
    return j.get<double>();
}

std::uint64_t read_unsigned(const json& j, const std::string& field)
{
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer()) {
        throw ParameterError(field, "must be nonnegative");
    }
    throw ParameterError(field, "expected a nonnegative integer");
}

std::string read_string(const json& j, const std::string& field)
{
    if (!j.is_string()) {
        throw ParameterError(field, "expected a string");
    }
    return j.get<std::string>();
}

std::vector<double> read_numbers(const json& j, const std::string& field)
{
    if (!j.is_array()) {
        throw ParameterError(field, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(read_number(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
}

RicianFactor read_rician(const json& j, const std::string& field)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity" || s == "Infinity" || s == "INF") {
            return RicianFactor::infinite();
        }
        throw ParameterError(field, "expected a number or \"inf\", got '" + s + "'");
    }
    const double k = read_number(j, field);
    try {
        return RicianFactor(k);
    } catch (const ParameterError& e) {
        throw ParameterError(field, "must be nonnegative or inf");
    }
}

using Reader = std::function<void(const json&, const std::string&)>;

// Dispatches every key of a JSON object to its reader; unknown keys are errors.
void read_section(const json& j, const std::string& section,
                  const std::map<std::string, Reader>& readers)
{
    if (!j.is_object()) {
        throw ParameterError(section, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        const auto it = readers.find(key);
        const auto field = join(section, key);
        if (it == readers.end()) {
            throw ParameterError(field, "unknown key");
        }
        it->second(value, field);
    }
}

// Re-labels a ParameterError from a sub-config with its section prefix.
template <class Fn>
void validate_in(const std::string& section, Fn&& fn)
{
    try {
        fn();
    } catch (const ParameterError& e) {
        const auto& f = e.field();
        const bool prefixed = f.rfind(section + ".", 0) == 0;
        if (prefixed) {
            throw;
        }
        const std::string what = e.what();
        throw ParameterError(section + "." + f, what.substr(f.size() + 2));
    }
}

void read_config(const json& root, RunConfig& cfg)
{
    bool explicit_wavelength = false;
    read_section(root, "", {
        {"array", [&](const json& j, const std::string& s) {
             read_section(j, s, {
                 {"total_aps", [&](const json& v, const std::string& f) { cfg.array.total_aps = read_unsigned(v, f); }},
                 {"ap_spacing", [&](const json& v, const std::string& f) { cfg.array.ap_spacing = read_number(v, f); }},
                 {"antennas_per_ap", [&](const json& v, const std::string& f) { cfg.array.antennas_per_ap = read_unsigned(v, f); }},
                 {"carrier_frequency", [&](const json& v, const std::string& f) { cfg.carrier_frequency = read_number(v, f); }},
                 {"wavelength", [&](const json& v, const std::string& f) {
                      if (!v.is_null()) {
                          cfg.array.wavelength = read_number(v, f);
                          explicit_wavelength = true;
                      }
                  }},
             });
         }},
        {"channel", [&](const json& j, const std::string& s) {
             read_section(j, s, {
                 {"rician_k", [&](const json& v, const std::string& f) { cfg.channel.rician_k = read_rician(v, f); }},
                 {"half_exponent", [&](const json& v, const std::string& f) { cfg.channel.half_exponent = read_number(v, f); }},
                 {"reference_gain", [&](const json& v, const std::string& f) { cfg.channel.reference_gain = read_number(v, f); }},
                 {"reference_distance", [&](const json& v, const std::string& f) {
                      if (v.is_null()) {
                          cfg.channel.reference_distance.reset();
                      } else {
                          cfg.channel.reference_distance = read_number(v, f);
                      }
                  }},
             });
         }},
        {"service", [&](const json& j, const std::string& s) {
             read_section(j, s, {
                 {"kind", [&](const json& v, const std::string& f) { cfg.service.kind = parse_service_kind(read_string(v, f)); }},
                 {"outage_target", [&](const json& v, const std::string& f) { cfg.service.outage_target = read_number(v, f); }},
                 {"required_gain", [&](const json& v, const std::string& f) { cfg.service.required_gain = read_number(v, f); }},
             });
         }},
        {"budget", [&](const json& j, const std::string& s) {
             read_section(j, s, {
                 {"total_power", [&](const json& v, const std::string& f) { cfg.budget.total_power = read_number(v, f); }},
                 {"noise_power", [&](const json& v, const std::string& f) { cfg.budget.noise_power = read_number(v, f); }},
             });
         }},
        {"experiment", [&](const json& j, const std::string& s) {
             auto& e = cfg.experiment;
             read_section(j, s, {
                 {"seed", [&](const json& v, const std::string& f) { e.seed = read_unsigned(v, f); }},
                 {"threads", [&](const json& v, const std::string& f) { e.threads = static_cast<unsigned>(read_unsigned(v, f)); }},
                 {"out_dir", [&](const json& v, const std::string& f) { e.out_dir = read_string(v, f); }},
                 {"max_cluster", [&](const json& v, const std::string& f) { e.max_cluster = read_unsigned(v, f); }},
                 {"mode", [&](const json& v, const std::string& f) { e.mode = parse_evaluation_mode(read_string(v, f)); }},
                 {"central_window", [&](const json& v, const std::string& f) { e.central_window = read_number(v, f); }},
             });
         }},
        {"gain_profile", [&](const json& j, const std::string& s) {
             auto& p = cfg.profile;
             read_section(j, s, {
                 {"y_values", [&](const json& v, const std::string& f) { p.y_values = read_numbers(v, f); }},
                 {"x_start", [&](const json& v, const std::string& f) { p.x_start = read_number(v, f); }},
                 {"x_end", [&](const json& v, const std::string& f) { p.x_end = read_number(v, f); }},
                 {"x_step", [&](const json& v, const std::string& f) { p.x_step = read_number(v, f); }},
                 {"services", [&](const json& v, const std::string& f) {
                      if (!v.is_array()) {
                          throw ParameterError(f, "expected an array of service names");
                      }
                      p.services.clear();
                      for (const auto& item : v) {
                          p.services.push_back(parse_service_kind(read_string(item, f)));
                      }
                  }},
             });
         }},
        {"map", [&](const json& j, const std::string& s) {
             auto& m = cfg.map;
             read_section(j, s, {
                 {"x_min", [&](const json& v, const std::string& f) { m.extent.x_min = read_number(v, f); }},
                 {"x_max", [&](const json& v, const std::string& f) { m.extent.x_max = read_number(v, f); }},
                 {"y_min", [&](const json& v, const std::string& f) { m.extent.y_min = read_number(v, f); }},
                 {"y_max", [&](const json& v, const std::string& f) { m.extent.y_max = read_number(v, f); }},
                 {"resolution", [&](const json& v, const std::string& f) { m.resolution = read_number(v, f); }},
             });
         }},
        {"coverage", [&](const json& j, const std::string& s) {
             auto& c = cfg.coverage;
             read_section(j, s, {
                 {"x_start", [&](const json& v, const std::string& f) { c.x_start = read_number(v, f); }},
                 {"y_values", [&](const json& v, const std::string& f) { c.y_values = read_numbers(v, f); }},
                 {"required_gains_db", [&](const json& v, const std::string& f) { c.required_gains_db = read_numbers(v, f); }},
                 {"quadrature_points", [&](const json& v, const std::string& f) { c.quadrature_points = read_unsigned(v, f); }},
                 {"model", [&](const json& v, const std::string& f) { c.model = parse_exceedance_model(read_string(v, f)); }},
             });
         }},
        {"outage", [&](const json& j, const std::string& s) {
             auto& o = cfg.outage;
             read_section(j, s, {
                 {"x", [&](const json& v, const std::string& f) { o.x = read_number(v, f); }},
                 {"y", [&](const json& v, const std::string& f) { o.y = read_number(v, f); }},
                 {"cluster_size", [&](const json& v, const std::string& f) { o.cluster_size = read_unsigned(v, f); }},
                 {"targets", [&](const json& v, const std::string& f) { o.targets = read_numbers(v, f); }},
                 {"trials", [&](const json& v, const std::string& f) { o.trials = read_unsigned(v, f); }},
             });
         }},
        {"theorem", [&](const json& j, const std::string& s) {
             auto& t = cfg.theorem;
             read_section(j, s, {
                 {"element_counts", [&](const json& v, const std::string& f) {
                      if (!v.is_array()) {
                          throw ParameterError(f, "expected an array of counts");
                      }
                      t.element_counts.clear();
                      for (const auto& item : v) {
                          t.element_counts.push_back(read_unsigned(item, f));
                      }
                  }},
                 {"trials", [&](const json& v, const std::string& f) { t.trials = read_unsigned(v, f); }},
             });
         }},
    });

    if (!explicit_wavelength) {
        if (!(cfg.carrier_frequency > 0.0) || !std::isfinite(cfg.carrier_frequency)) {
            throw ParameterError("array.carrier_frequency", "must be positive");
        }
        cfg.array.wavelength = kSpeedOfLight / cfg.carrier_frequency;
    }
}

std::string parse_error_context(const std::string& text, std::size_t byte, const std::string& source,
                                const std::string& what)
{
    std::size_t line = 1;
    std::size_t line_start = 0;
    const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
        if (text[i] == '\n') {
            ++line;
            line_start = i + 1;
        }
    }
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) {
        line_end = text.size();
    }
    const std::size_t col = stop - line_start + 1;
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": " << what << "\n    "
       << text.substr(line_start, line_end - line_start) << "\n    "
       << std::string(col > 0 ? col - 1 : 0, ' ') << "^";
    return os.str();
}

json parse_json(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(parse_error_context(text, e.byte, source, "invalid JSON"));
    }
}

void apply_override(json& root, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }

    json* node = &root;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot - start);
        if (part.empty()) {
            throw ConfigError("override key '" + key + "' has an empty component");
        }
        if (!node->is_object()) {
            throw ConfigError("override key '" + key + "' descends into a non-object");
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        if (node->is_null()) {
            *node = json::object();
        }
        start = dot + 1;
    }
}

}  // namespace

void RunConfig::validate() const
{
    validate_in("array", [&] { array.validate(); });
    validate_in("channel", [&] { channel.validate(); });
    validate_in("service", [&] { service.validate(); });
    validate_in("budget", [&] { budget.validate(); });

    if (experiment.max_cluster > array.total_aps) {
        throw ParameterError("experiment.max_cluster", "exceeds array.total_aps");
    }
    if (!(experiment.central_window > 0.0 && experiment.central_window <= 1.0)) {
        throw ParameterError("experiment.central_window", "must lie in (0, 1]");
    }

    for (double y : profile.y_values) {
        if (!(y > 0.0)) {
            throw ParameterError("gain_profile.y_values", "every y must be strictly positive");
        }
    }
    if (!(profile.x_step > 0.0)) {
        throw ParameterError("gain_profile.x_step", "must be positive");
    }
    if (!(profile.x_end >= profile.x_start)) {
        throw ParameterError("gain_profile.x_end", "must not precede x_start");
    }
    if (profile.services.empty()) {
        throw ParameterError("gain_profile.services", "must name at least one service");
    }

    if (!(map.resolution > 0.0)) {
        throw ParameterError("map.resolution", "must be positive");
    }
    if (!(map.extent.x_max >= map.extent.x_min)) {
        throw ParameterError("map.x_max", "must not precede x_min");
    }
    if (!(map.extent.y_min > 0.0)) {
        throw ParameterError("map.y_min", "must be strictly positive");
    }
    if (!(map.extent.y_max >= map.extent.y_min)) {
        throw ParameterError("map.y_max", "must not precede y_min");
    }

    CoverageSpec spec;
    spec.x_start = coverage.x_start;
    spec.y_values = coverage.y_values;
    spec.quadrature_points = coverage.quadrature_points;
    spec.service = service;
    spec.validate();
    if (coverage.required_gains_db.empty()) {
        throw ParameterError("coverage.required_gains_db", "must not be empty");
    }

    if (!(outage.y > 0.0)) {
        throw ParameterError("outage.y", "must be strictly positive");
    }
    if (outage.cluster_size < 1 || outage.cluster_size > array.total_aps) {
        throw ParameterError("outage.cluster_size", "must lie in [1, array.total_aps]");
    }
    for (double t : outage.targets) {
        if (!(t > 0.0 && t < 1.0)) {
            throw ParameterError("outage.targets", "every target must lie in (0, 1)");
        }
    }
    if (outage.trials < 1) {
        throw ParameterError("outage.trials", "must be at least 1");
    }

    for (auto m : theorem.element_counts) {
        if (m < 1) {
            throw ParameterError("theorem.element_counts", "every count must be at least 1");
        }
    }
    if (theorem.trials < 1) {
        throw ParameterError("theorem.trials", "must be at least 1");
    }
}

AnalysisOptions RunConfig::analysis_options() const
{
    AnalysisOptions o;
    o.max_cluster = experiment.max_cluster;
    o.mode = experiment.mode;
    o.threads = experiment.threads;
    o.central_window = experiment.central_window;
    return o;
}

RunConfig parse_config(const std::string& text, const std::string& source)
{
    RunConfig cfg;
    read_config(parse_json(text, source), cfg);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::optional<std::filesystem::path>& path,
                      std::span<const std::string> overrides,
                      std::span<const std::string> fallbacks)
{
    json root = json::object();
    if (path) {
        std::ifstream in(*path);
        if (!in) {
            throw ConfigError("cannot read config file '" + path->string() + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        root = parse_json(buf.str(), path->string());
        if (!root.is_object()) {
            throw ConfigError(path->string() + ": top level must be a JSON object");
        }
    }
    for (const auto& o : overrides) {
        apply_override(root, o);
    }
    json base = json::object();
    for (const auto& f : fallbacks) {
        apply_override(base, f);
    }
    base.merge_patch(root);
    RunConfig cfg;
    read_config(base, cfg);
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json to_json(const RunConfig& cfg)
{
    using oj = nlohmann::ordered_json;
    const auto& c = cfg.channel;
    oj out;
    out["array"] = {
        {"total_aps", cfg.array.total_aps},
        {"ap_spacing", cfg.array.ap_spacing},
        {"antennas_per_ap", cfg.array.antennas_per_ap},
        {"carrier_frequency", cfg.carrier_frequency},
        {"wavelength", cfg.array.wavelength},
    };
    out["channel"] = {
        {"rician_k", c.rician_k.is_infinite() ? oj("inf") : oj(c.rician_k.value())},
        {"half_exponent", c.half_exponent},
        {"reference_gain", c.reference_gain},
        {"reference_distance", c.reference_distance ? oj(*c.reference_distance) : oj(nullptr)},
    };
    out["service"] = {
        {"kind", std::string(to_string(cfg.service.kind))},
        {"outage_target", cfg.service.outage_target},
        {"required_gain", cfg.service.required_gain},
    };
    out["budget"] = {
        {"total_power", cfg.budget.total_power},
        {"noise_power", cfg.budget.noise_power},
    };
    const auto& e = cfg.experiment;
    out["experiment"] = {
        {"seed", e.seed},
        {"threads", e.threads},
        {"out_dir", e.out_dir},
        {"max_cluster", e.max_cluster},
        {"mode", std::string(to_string(e.mode))},
        {"central_window", e.central_window},
    };
    oj services = oj::array();
    for (auto s : cfg.profile.services) {
        services.push_back(std::string(to_string(s)));
    }
    out["gain_profile"] = {
        {"y_values", cfg.profile.y_values},
        {"x_start", cfg.profile.x_start},
        {"x_end", cfg.profile.x_end},
        {"x_step", cfg.profile.x_step},
        {"services", services},
    };
    out["map"] = {
        {"x_min", cfg.map.extent.x_min},
        {"x_max", cfg.map.extent.x_max},
        {"y_min", cfg.map.extent.y_min},
        {"y_max", cfg.map.extent.y_max},
        {"resolution", cfg.map.resolution},
    };
    out["coverage"] = {
        {"x_start", cfg.coverage.x_start},
        {"y_values", cfg.coverage.y_values},
        {"required_gains_db", cfg.coverage.required_gains_db},
        {"quadrature_points", cfg.coverage.quadrature_points},
        {"model", std::string(to_string(cfg.coverage.model))},
    };
    out["outage"] = {
        {"x", cfg.outage.x},
        {"y", cfg.outage.y},
        {"cluster_size", cfg.outage.cluster_size},
        {"targets", cfg.outage.targets},
        {"trials", cfg.outage.trials},
    };
    out["theorem"] = {
        {"element_counts", cfg.theorem.element_counts},
        {"trials", cfg.theorem.trials},
    };
    return out;
}

}  // namespace elaa
