#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "beamsweep/config.hpp"
#include "beamsweep/detection.hpp"
#include "beamsweep/errors.hpp"
#include "beamsweep/evaluation.hpp"
#include "beamsweep/sampling.hpp"
#include "beamsweep/sparse_omp.hpp"

namespace py = pybind11;
using namespace beamsweep;

namespace {

std::vector<double> values(const std::vector<NafAngle>& g) {
  std::vector<double> v;
  v.reserve(g.size());
  for (const auto& a : g) v.push_back(a.value);
  return v;
}

std::vector<NafAngle> angles(const std::vector<double>& v) {
  std::vector<NafAngle> g;
  g.reserve(v.size());
  for (double x : v) g.emplace_back(x);
  return g;
}

RunConfig run_config(const std::string& json_text) {
  return json_text.empty() ? config_from_json(nlohmann::json::object())
                           : config_from_json(nlohmann::json::parse(json_text));
}

py::dict peak_dict(const PeakEstimate& p) {
  py::dict d;
  d["naf"] = p.naf.value;
  d["range_m"] = p.range_m;
  d["power"] = p.power;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Angular sweep reconstruction and evaluation";

  py::register_exception<ContractViolation>(m, "ContractViolation");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("naf_resolution", &naf_resolution, py::arg("n_1d"));
  m.def("dirichlet_kernel", &dirichlet_kernel, py::arg("lag"), py::arg("order"));
  m.def(
      "minimal_naf_grid", [](int n, double limit) { return values(minimal_naf_grid(n, NafAngle(limit))); },
      py::arg("n_1d"), py::arg("limit"));
  m.def(
      "oversampled_naf_grid",
      [](int n, double limit, int factor) { return values(oversampled_naf_grid(n, NafAngle(limit), factor)); },
      py::arg("n_1d"), py::arg("limit"), py::arg("factor") = 10);
  m.def(
      "sweep_durations",
      [](int n, double limit, int factor) {
        return std::make_pair(sweep_duration(SweepPlan::minimal(n, NafAngle(limit))),
                              sweep_duration(SweepPlan::oversampled(n, NafAngle(limit), factor)));
      },
      py::arg("n_1d"), py::arg("limit"), py::arg("factor") = 10);

  m.def(
      "beamformed_response",
      [](int n, const std::vector<std::pair<double, std::complex<double>>>& scatterers, const std::vector<double>& steer,
         bool flat_coarray) {
        const auto geom = ArrayGeometry::uniform_linear(n, n);
        const auto w = flat_coarray ? BeamformingWeights::flat_coarray(geom) : BeamformingWeights::uniform(geom);
        std::vector<Scatterer> s;
        for (const auto& [l, a] : scatterers) s.push_back({NafAngle(l), 1.0, a});
        std::vector<std::complex<double>> out;
        for (double l : steer) out.push_back(beamformed_response(geom, w, s, NafAngle(l)));
        return out;
      },
      py::arg("n_1d"), py::arg("scatterers"), py::arg("steer"), py::arg("flat_coarray") = false);

  m.def(
      "dft_interpolate",
      [](const std::vector<double>& beams, const std::vector<double>& samples, int order,
         const std::vector<double>& targets) { return dft_interpolate(angles(beams), samples, order, angles(targets)); },
      py::arg("beams"), py::arg("samples"), py::arg("order"), py::arg("targets"));
  m.def(
      "spline_interpolate",
      [](const std::vector<double>& beams, const std::vector<double>& samples, const std::vector<double>& targets) {
        return spline_interpolate(angles(beams), samples, angles(targets));
      },
      py::arg("beams"), py::arg("samples"), py::arg("targets"));

  m.def(
      "ca_cfar",
      [](const std::vector<double>& profile, double p_fa, int n_training, int n_guard) {
        CfarConfig c;
        c.p_fa = p_fa;
        c.n_training = n_training;
        c.n_guard = n_guard;
        return ca_cfar(profile, c);
      },
      py::arg("profile"), py::arg("p_fa") = 1e-6, py::arg("n_training") = 8, py::arg("n_guard") = 2);

  m.def(
      "omp",
      [](const Eigen::VectorXd& y, int k_max, double epsilon, const std::string& config_json) {
        const auto cfg = run_config(config_json).pipeline;
        const MethodRunner runner(cfg);
        OmpConfig o;
        o.k_max = k_max;
        o.epsilon = epsilon;
        const auto est = omp(y, runner.dictionary(), o);
        py::dict d;
        std::vector<double> nafs;
        for (int i : est.support) nafs.push_back(runner.dictionary().grid[static_cast<std::size_t>(i)].value);
        d["support"] = est.support;
        d["naf"] = nafs;
        d["coefficients"] = est.coefficients;
        d["residual_norm"] = est.residual_norm;
        d["iterations"] = est.iterations;
        d["rank_deficient"] = est.rank_deficient;
        return d;
      },
      py::arg("y"), py::arg("k_max") = 5, py::arg("epsilon") = 0.05, py::arg("config_json") = "",
      "OMP over the default matched dictionary (9 beams x 81 candidates).");
  m.def(
      "dictionary",
      [](const std::string& config_json) {
        const MethodRunner runner(run_config(config_json).pipeline);
        return std::make_tuple(runner.dictionary().atoms, values(runner.dictionary().beam_grid),
                               values(runner.dictionary().grid));
      },
      py::arg("config_json") = "");

  m.def(
      "catalog",
      [](const std::string& config_json) {
        py::list out;
        for (const auto& s : scenario_catalog(run_config(config_json).catalog)) {
          py::dict d;
          d["name"] = s.name;
          d["kind"] = to_string(s.kind);
          d["spacing_label"] = s.spacing_label;
          d["separation"] = s.separation();
          d["target_nafs"] = std::vector<double>{s.target_nafs[0].value, s.target_nafs[1].value};
          d["snr_db"] = s.snr_db;
          out.append(d);
        }
        return out;
      },
      py::arg("config_json") = "");

  m.def(
      "evaluate",
      [](const std::vector<std::string>& names, const std::vector<std::string>& methods, int n_seeds,
         const std::string& config_json) {
        auto rc = run_config(config_json);
        apply_seed_env(rc);
        if (n_seeds > 0) rc.n_seeds = n_seeds;
        const auto catalog = scenario_catalog(rc.catalog);
        std::vector<Scenario> chosen;
        if (names.empty())
          chosen = catalog;
        else
          for (const auto& n : names) chosen.push_back(find_scenario(catalog, n));
        std::vector<Method> ms;
        if (methods.empty())
          ms = all_methods();
        else
          for (const auto& s : methods) ms.push_back(method_from_string(s));
        EvaluationResult r;
        {
          py::gil_scoped_release release;
          r = evaluate(chosen, ms, rc.seeds(), rc.pipeline, rc.threads);
        }
        std::ostringstream out;
        write_report_json(out, r, rc.pipeline);
        return out.str();
      },
      py::arg("scenarios") = std::vector<std::string>{}, py::arg("methods") = std::vector<std::string>{},
      py::arg("n_seeds") = 0, py::arg("config_json") = "", "Runs the evaluation and returns the JSON report text.");

  m.def(
      "naf_to_cross_track_m",
      [](double delta, double range_m) { return naf_to_cross_track_m(delta, range_m); }, py::arg("naf_delta"),
      py::arg("range_m"));

  m.def(
      "extract_peaks",
      [](const std::vector<double>& grid, const std::vector<double>& power, double resolution, int max_peaks) {
        py::list out;
        for (const auto& p : extract_peaks(angles(grid), power, resolution, max_peaks)) out.append(peak_dict(p));
        return out;
      },
      py::arg("grid"), py::arg("power"), py::arg("resolution") = 1.0 / 15.0, py::arg("max_peaks") = 2);
}
