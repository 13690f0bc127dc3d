#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <limits>

#include "elaa/analytics.hpp"
#include "elaa/commands.hpp"
#include "elaa/config.hpp"
#include "elaa/coverage.hpp"
#include "elaa/error.hpp"
#include "elaa/geometry.hpp"
#include "elaa/montecarlo.hpp"
#include "elaa/optimizer.hpp"
#include "elaa/version.hpp"

namespace py = pybind11;
using namespace elaa;

namespace {

RicianFactor rician(double k)
{
    return std::isinf(k) ? RicianFactor::infinite() : RicianFactor(k);
}

ChannelParams make_channel(double rician_k, double half_exponent, double reference_gain,
                           std::optional<double> reference_distance)
{
    ChannelParams p;
    p.rician_k = rician(rician_k);
    p.half_exponent = half_exponent;
    p.reference_gain = reference_gain;
    p.reference_distance = reference_distance;
    p.validate();
    return p;
}

ServiceSpec make_service(const std::string& kind, double outage_target)
{
    ServiceSpec s;
    s.kind = parse_service_kind(kind);
    s.outage_target = outage_target;
    s.validate();
    return s;
}

py::dict stat_dict(const EmpiricalStat& s)
{
    py::dict d;
    d["mean"] = s.mean;
    d["variance"] = s.variance;
    d["std_error"] = s.std_error;
    d["count"] = s.count;
    return d;
}

TrialPlan make_plan(double x, double y, std::size_t cluster_size, const ArrayConfig& cfg,
                    const ChannelParams& ch, std::size_t trials, std::uint64_t seed,
                    unsigned threads)
{
    TrialPlan plan;
    plan.trials = trials;
    plan.master_seed = seed;
    plan.threads = threads;
    plan.scenario = make_scenario({x, y}, cluster_size, cfg, ch);
    return plan;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Cluster-size optimization and coverage analysis for networked linear arrays";
    m.attr("__version__") = kVersion;

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UnknownCommand>(m, "UnknownCommand", PyExc_ValueError);
    py::register_exception<OutputError>(m, "OutputError", PyExc_OSError);

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def(py::init([](std::size_t total_aps, double ap_spacing, std::size_t antennas_per_ap,
                         double wavelength) {
                 ArrayConfig c{total_aps, ap_spacing, antennas_per_ap, wavelength};
                 c.validate();
                 return c;
             }),
             py::arg("total_aps") = 128, py::arg("ap_spacing") = 10.0,
             py::arg("antennas_per_ap") = 8, py::arg("wavelength") = kSpeedOfLight / 3.5e9)
        .def_readwrite("total_aps", &ArrayConfig::total_aps)
        .def_readwrite("ap_spacing", &ArrayConfig::ap_spacing)
        .def_readwrite("antennas_per_ap", &ArrayConfig::antennas_per_ap)
        .def_readwrite("wavelength", &ArrayConfig::wavelength)
        .def("span", &ArrayConfig::span)
        .def("__repr__", [](const ArrayConfig& c) {
            return "ArrayConfig(total_aps=" + std::to_string(c.total_aps) +
                   ", ap_spacing=" + std::to_string(c.ap_spacing) +
                   ", antennas_per_ap=" + std::to_string(c.antennas_per_ap) + ")";
        });

    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init(&make_channel), py::arg("rician_k") = 5.0, py::arg("half_exponent") = 1.0,
             py::arg("reference_gain") = 1.0, py::arg("reference_distance") = py::none())
        .def_property_readonly("rician_k", [](const ChannelParams& p) { return p.rician_k.value(); })
        .def_readonly("half_exponent", &ChannelParams::half_exponent)
        .def_readonly("reference_gain", &ChannelParams::reference_gain)
        .def_readonly("reference_distance", &ChannelParams::reference_distance);

    py::class_<ServiceSpec>(m, "ServiceSpec")
        .def(py::init(&make_service), py::arg("kind") = "eMBB", py::arg("outage_target") = 0.5e-6)
        .def_property_readonly("kind", [](const ServiceSpec& s) { return std::string(to_string(s.kind)); })
        .def_readonly("outage_target", &ServiceSpec::outage_target);

    // geometry
    m.def("select_cluster",
          [](double x, double y, std::size_t cluster_size, const ArrayConfig& cfg) {
              return select_cluster({x, y}, cluster_size, cfg).ap_indices;
          },
          py::arg("x"), py::arg("y"), py::arg("cluster_size"), py::arg("array") = ArrayConfig{},
          "Indices of the cluster_size APs nearest to (x, y), ascending.");

    // closed forms
    m.def("eta", &eta_for, py::arg("ap_spacing"), py::arg("y"));
    m.def("g_function", &g_function, py::arg("cluster_size"), py::arg("eta"), py::arg("q"));
    m.def("gamma_function", &gamma_function, py::arg("cluster_size"), py::arg("eta"), py::arg("q"));
    m.def("concavity_threshold", &concavity_threshold, py::arg("q"));
    m.def("classify_g", [](double eta, double q) { return std::string(to_string(classify_g(eta, q))); },
          py::arg("eta"), py::arg("q"));
    m.def("mean_gain",
          [](std::size_t L, double eta, double q, double k, std::size_t m_ap, double alpha_perp) {
              return mean_gain(L, eta, q, GainModel{rician(k), m_ap, alpha_perp});
          },
          py::arg("cluster_size"), py::arg("eta"), py::arg("q"), py::arg("rician_k"),
          py::arg("antennas_per_ap") = 8, py::arg("perpendicular_gain") = 1.0);
    m.def("fluct_variance",
          [](std::size_t L, double eta, double q, double k, std::size_t m_ap, double alpha_perp) {
              return fluct_variance(L, eta, q, GainModel{rician(k), m_ap, alpha_perp});
          },
          py::arg("cluster_size"), py::arg("eta"), py::arg("q"), py::arg("rician_k"),
          py::arg("antennas_per_ap") = 8, py::arg("perpendicular_gain") = 1.0);
    m.def("outage_probability", &outage_probability, py::arg("beta_top"), py::arg("mean"),
          py::arg("sigma"));
    m.def("gaussian_outage", &gaussian_outage, py::arg("beta_top"), py::arg("mean"), py::arg("sigma"));
    m.def("gain_threshold", &gain_threshold, py::arg("target"), py::arg("mean"), py::arg("sigma"));
    m.def("asymptotic_isnr", [](double k, double snr) { return asymptotic_isnr(rician(k), snr); },
          py::arg("rician_k"), py::arg("snr") = 1.0);

    // optimizer
    m.def("optimize_cluster",
          [](double x, double y, const ServiceSpec& service, const ArrayConfig& cfg,
             const ChannelParams& ch, std::size_t max_cluster, const std::string& mode) {
              const auto r = optimize_cluster({x, y}, cfg, ch, service,
                                              max_cluster == 0 ? cfg.total_aps : max_cluster,
                                              parse_evaluation_mode(mode));
              py::dict d;
              d["best_L"] = r.best_L;
              d["objective"] = r.objective;
              d["ap_indices"] = r.ap_indices;
              std::vector<double> curve;
              for (const auto& p : r.objective_curve) {
                  curve.push_back(p.objective);
              }
              d["objective_curve"] = curve;
              return d;
          },
          py::arg("x"), py::arg("y"), py::arg("service") = ServiceSpec{},
          py::arg("array") = ArrayConfig{}, py::arg("channel") = ChannelParams{},
          py::arg("max_cluster") = 0, py::arg("mode") = "geometric",
          "Best cluster size at (x, y); objective_curve[L-1] is the objective for L APs.");

    // Monte Carlo
    m.def("empirical_gain",
          [](double x, double y, std::size_t L, const ArrayConfig& cfg, const ChannelParams& ch,
             std::size_t trials, std::uint64_t seed, unsigned threads) {
              EmpiricalStat s;
              {
                  py::gil_scoped_release release;
                  s = empirical_gain(make_plan(x, y, L, cfg, ch, trials, seed, threads));
              }
              return stat_dict(s);
          },
          py::arg("x"), py::arg("y"), py::arg("cluster_size"), py::arg("array") = ArrayConfig{},
          py::arg("channel") = ChannelParams{}, py::arg("trials") = 100000, py::arg("seed") = 1,
          py::arg("threads") = 0);
    m.def("empirical_outage",
          [](double x, double y, std::size_t L, const std::vector<double>& thresholds,
             const ArrayConfig& cfg, const ChannelParams& ch, std::size_t trials,
             std::uint64_t seed, unsigned threads) {
              std::vector<OutageEstimate> est;
              {
                  py::gil_scoped_release release;
                  est = empirical_outage(make_plan(x, y, L, cfg, ch, trials, seed, threads), thresholds);
              }
              std::vector<double> p;
              for (const auto& e : est) {
                  p.push_back(e.probability);
              }
              return p;
          },
          py::arg("x"), py::arg("y"), py::arg("cluster_size"), py::arg("thresholds"),
          py::arg("array") = ArrayConfig{}, py::arg("channel") = ChannelParams{},
          py::arg("trials") = 100000, py::arg("seed") = 1, py::arg("threads") = 0,
          "Fraction of trials with beta_bar below each threshold.");
    m.def("stationary_isnr",
          [](std::size_t elements, double k, double snr, std::size_t trials, std::uint64_t seed,
             unsigned threads) {
              TrialPlan plan;
              plan.trials = trials;
              plan.master_seed = seed;
              plan.threads = threads;
              EmpiricalStat s;
              {
                  py::gil_scoped_release release;
                  s = stationary_isnr(elements, rician(k), snr, plan);
              }
              return stat_dict(s);
          },
          py::arg("elements"), py::arg("rician_k"), py::arg("snr") = 1.0, py::arg("trials") = 10000,
          py::arg("seed") = 1, py::arg("threads") = 0);

    // coverage
    m.def("coverage_probability",
          [](double y, double required_gain, const ServiceSpec& service, const ArrayConfig& cfg,
             const ChannelParams& ch, double x_start, std::size_t quadrature_points,
             bool single_ap, const std::string& model) {
              CoverageSpec spec;
              spec.x_start = x_start;
              spec.required_gain = required_gain;
              spec.quadrature_points = quadrature_points;
              spec.service = service;
              spec.model = parse_exceedance_model(model);
              py::gil_scoped_release release;
              return coverage_probability(y, spec, cfg, ch,
                                          single_ap ? ClusterPolicy::SingleAp : ClusterPolicy::Optimized);
          },
          py::arg("y"), py::arg("required_gain"), py::arg("service") = ServiceSpec{},
          py::arg("array") = ArrayConfig{}, py::arg("channel") = ChannelParams{},
          py::arg("x_start") = 640.0, py::arg("quadrature_points") = 256,
          py::arg("single_ap") = false, py::arg("model") = "service_objective");
    m.def("gain_map",
          [](double x_min, double x_max, double y_min, double y_max, double resolution,
             const ServiceSpec& service, const ArrayConfig& cfg, const ChannelParams& ch) {
              GainMap map;
              {
                  py::gil_scoped_release release;
                  map = gain_map({x_min, x_max, y_min, y_max}, resolution, service, cfg, ch);
              }
              py::array_t<double> objective({map.ny, map.nx});
              py::array_t<std::int64_t> best({map.ny, map.nx});
              auto o = objective.mutable_unchecked<2>();
              auto b = best.mutable_unchecked<2>();
              for (std::size_t iy = 0; iy < map.ny; ++iy) {
                  for (std::size_t ix = 0; ix < map.nx; ++ix) {
                      o(iy, ix) = map.at(ix, iy).objective;
                      b(iy, ix) = static_cast<std::int64_t>(map.at(ix, iy).best_L);
                  }
              }
              py::dict d;
              d["objective"] = objective;
              d["best_L"] = best;
              d["edge_warning"] = map.edge_warning;
              return d;
          },
          py::arg("x_min"), py::arg("x_max"), py::arg("y_min"), py::arg("y_max"),
          py::arg("resolution"), py::arg("service") = ServiceSpec{},
          py::arg("array") = ArrayConfig{}, py::arg("channel") = ChannelParams{},
          "Optimized objective and best cluster size on a grid; arrays are indexed [y, x].");

    // config + commands
    py::class_<RunConfig>(m, "RunConfig")
        .def("to_json", [](const RunConfig& c) { return to_json(c).dump(); });
    m.def("load_config",
          [](std::optional<std::filesystem::path> path, const std::vector<std::string>& overrides) {
              return load_config(path, overrides);
          },
          py::arg("path") = py::none(), py::arg("overrides") = std::vector<std::string>{});
    m.def("command_names", [] {
        std::vector<std::string> out;
        for (auto n : command_names()) {
            out.emplace_back(n);
        }
        return out;
    });
    m.def("run_table",
          [](const std::string& command, const RunConfig& cfg) {
              Table t;
              {
                  py::gil_scoped_release release;
                  t = run_table(command, cfg);
              }
              return py::make_tuple(t.columns, t.rows);
          },
          py::arg("command"), py::arg("config"), "(columns, rows) of a command without writing files.");
    m.def("run_command",
          [](const std::string& command, const RunConfig& cfg) {
              CommandOutput out;
              {
                  py::gil_scoped_release release;
                  out = run_command(command, cfg);
              }
              return py::make_tuple(out.csv, out.metadata);
          },
          py::arg("command"), py::arg("config"), "Runs a command; returns (csv_path, json_path).");
}
