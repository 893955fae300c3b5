#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "beamsweep/config.hpp"
#include "beamsweep/errors.hpp"
#include "beamsweep/evaluation.hpp"
#include "beamsweep/pipeline.hpp"
#include "beamsweep/ramp_io.hpp"
#include "beamsweep/random.hpp"
#include "beamsweep/scenario.hpp"

namespace fs = std::filesystem;
using namespace beamsweep;

namespace {

struct Options {
  std::string config_path;
  bool flat_dictionary = false;
  int threads = 0;
  int n_seeds = 0;

  std::string scenario;
  std::string sweep = "oversampled";
  std::string out;
  std::string in;
  std::string csv_out;
  std::string csi_out;
  double csi_naf = 0.0;
  int frames = 0;
  std::string method = "dft";
  std::vector<std::string> scenarios;
  std::vector<std::string> methods;
  bool json = false;
};

RunConfig load(const Options& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  apply_seed_env(c);
  if (o.flat_dictionary) c.pipeline.atom_model = AtomModel::flat_kernel;
  if (o.threads > 0) c.threads = o.threads;
  if (o.n_seeds > 0) c.n_seeds = o.n_seeds;
  return c;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  return f;
}

void write_peaks(std::ostream& out, const std::vector<PeakEstimate>& peaks) {
  out << "peak_index,naf,range_m,power_db\n" << std::setprecision(10);
  for (std::size_t i = 0; i < peaks.size(); ++i)
    out << i << ',' << peaks[i].naf.value << ',' << peaks[i].range_m << ',' << 10.0 * std::log10(peaks[i].power)
        << '\n';
}

int cmd_catalog(const Options& o) {
  const RunConfig c = load(o);
  const auto cat = scenario_catalog(c.catalog);
  if (o.json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& s : cat)
      j.push_back({{"name", s.name},
                   {"kind", to_string(s.kind)},
                   {"spacing", s.spacing_label},
                   {"spacing_m", s.spacing_m},
                   {"range_m", s.range_m},
                   {"target_nafs", {s.target_nafs[0].value, s.target_nafs[1].value}},
                   {"amplitude_db", s.amplitude_db},
                   {"snr_db", s.snr_db},
                   {"rear_wall_db", s.rear_wall.enabled ? nlohmann::ordered_json(s.rear_wall.amplitude_db) : nullptr}});
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << std::left << std::setw(31) << "name" << std::setw(12) << "kind" << std::setw(10) << "dd_m"
            << std::setw(10) << "sep_naf" << std::setw(8) << "amp_db" << "snr_db\n";
  for (const auto& s : cat)
    std::cout << std::left << std::setw(31) << s.name << std::setw(12) << to_string(s.kind) << std::setw(10)
              << s.spacing_m << std::setw(10) << s.separation() << std::setw(8) << s.amplitude_db << s.snr_db
              << '\n';
  return 0;
}

int cmd_simulate(const Options& o) {
  const RunConfig c = load(o);
  const auto& p = c.pipeline;
  const auto cat = scenario_catalog(c.catalog);
  const Scenario& sc = find_scenario(cat, o.scenario);
  const std::uint64_t seed = scenario_seed(c.master_seed, sc.name, 0);
  const Scene scene = build_scene(sc, seed);
  const auto geom = p.geometry();
  const auto weights = p.weights();
  const double noise = scenario_noise_power(sc, p.radio, geom, weights);

  if (!o.csi_out.empty()) {
    const FrameCsi csi = synthesize_csi(p.radio, scene, geom, weights, NafAngle(o.csi_naf), noise,
                                        derive_seed(seed, 0xc51), p.phase_mode);
    auto f = open_out(o.csi_out);
    f << "subcarrier,symbol,re,im\n" << std::setprecision(12);
    for (Eigen::Index k = 0; k < csi.rows(); ++k)
      for (Eigen::Index s = 0; s < csi.cols(); ++s)
        f << k << ',' << s << ',' << csi(k, s).real() << ',' << csi(k, s).imag() << '\n';
  }

  const int frames = o.frames > 0 ? o.frames : p.averaged_frames;
  const Acquisition acq = acquire(p, scene, noise, derive_seed(seed, 0xacc), frames);
  const Eigen::MatrixXd amp = averaged_amplitude(acq, 0, frames);

  RangeAngleMap map;
  map.range_axis = acq.range_axis;
  if (o.sweep == "minimal") {
    const auto cols = minimal_columns(p);
    map.power.resize(amp.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      map.power.col(static_cast<Eigen::Index>(k)) = amp.col(cols[k]).cwiseAbs2();
      map.angle_axis.push_back(acq.beam_grid[static_cast<std::size_t>(cols[k])]);
    }
  } else {
    map.power = amp.cwiseAbs2();
    map.angle_axis = acq.beam_grid;
  }
  write_ramp(o.out, map);
  if (!o.csv_out.empty()) write_map_csv(o.csv_out, map);
  std::cerr << "simulate: " << sc.name << " seed " << seed << ", " << map.angle_axis.size() << " beams x "
            << map.range_axis.size() << " range bins, " << frames << " frames averaged\n";
  return 0;
}

int cmd_reconstruct(const Options& o) {
  const RunConfig c = load(o);
  const MethodRunner runner(c.pipeline);
  const RangeAngleMap in = read_ramp(o.in);
  const auto& grid = runner.minimal_grid();
  if (in.angle_axis.size() != grid.size())
    throw InputError("input map has " + std::to_string(in.angle_axis.size()) + " beams, the minimal sweep has " +
                     std::to_string(grid.size()));
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (std::abs(in.angle_axis[k].value - grid[k].value) > 1e-9)
      throw InputError("input map beams are not on the minimal grid");
  const Method m = method_from_string(o.method);
  const MethodResult res = runner.run_minimal(m, Eigen::MatrixXd(in.power.cwiseSqrt()), in.range_axis);
  write_ramp(o.out, res.power_map(in.range_axis, runner.fine_grid()));
  if (!o.csv_out.empty()) {
    auto f = open_out(o.csv_out);
    write_peaks(f, res.peaks);
  }
  return 0;
}

int cmd_detect(const Options& o) {
  const RunConfig c = load(o);
  const RangeAngleMap map = read_ramp(o.in);
  const auto peaks = detect_peaks(map, c.pipeline.detection);
  if (o.out.empty() || o.out == "-") {
    write_peaks(std::cout, peaks);
  } else {
    auto f = open_out(o.out);
    write_peaks(f, peaks);
  }
  return 0;
}

int cmd_evaluate(const Options& o) {
  const RunConfig c = load(o);
  const auto cat = scenario_catalog(c.catalog);
  std::vector<Scenario> scenarios;
  if (o.scenarios.empty())
    scenarios = cat;
  else
    for (const auto& n : o.scenarios) scenarios.push_back(find_scenario(cat, n));
  std::vector<Method> methods;
  if (o.methods.empty())
    methods = all_methods();
  else
    for (const auto& n : o.methods) methods.push_back(method_from_string(n));

  const EvaluationResult res = evaluate(scenarios, methods, c.seeds(), c.pipeline, c.threads);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  {
    auto f = open_out((dir / "report.json").string());
    write_report_json(f, res, c.pipeline);
  }
  {
    auto f = open_out((dir / "report.csv").string());
    write_report_csv(f, res.report);
  }
  {
    auto f = open_out((dir / "peaks.csv").string());
    write_peaks_csv(f, res.runs, "avg" + std::to_string(c.pipeline.averaged_frames));
  }
  for (const auto& [name, maps] : res.first_seed_maps)
    for (const auto& [m, map] : maps) write_ramp((dir / (name + "." + to_string(m) + ".ramp")).string(), map);

  std::cout << std::left << std::setw(12) << "group" << std::setw(8) << "target";
  for (Method m : methods) std::cout << std::setw(14) << to_string(m);
  std::cout << '\n';
  for (const char* g : {"Reflectors", "Walls", "Combined", "Total"})
    for (const char* t : {"T1", "T2", "all"}) {
      if (std::string(g) == "Total" && std::string(t) != "all") continue;
      if (!res.report.find(g, t, methods.front())) continue;
      std::cout << std::setw(12) << g << std::setw(8) << t;
      for (Method m : methods) {
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(5) << res.report.find(g, t, m)->rmse;
        std::cout << std::setw(14) << cell.str();
      }
      std::cout << '\n';
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam sweep acquisition, angular reconstruction and RMSE evaluation"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-c,--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_flag("--flat-dictionary", o.flat_dictionary, "OMP atoms from the untapered Dirichlet kernel");

  auto* catalog = app.add_subcommand("catalog", "List the evaluation scenarios");
  catalog->add_flag("--json", o.json, "Print JSON instead of a table");

  auto* simulate = app.add_subcommand("simulate", "Simulate a scenario sweep into a range-angle periodogram");
  simulate->add_option("-s,--scenario", o.scenario, "Scenario name")->required();
  simulate->add_option("--sweep", o.sweep, "Beam grid")->check(CLI::IsMember({"oversampled", "minimal"}));
  simulate->add_option("--frames", o.frames, "Frames averaged per beam (default from config)");
  simulate->add_option("-o,--out", o.out, "Output RAMP file")->required();
  simulate->add_option("--csv", o.csv_out, "Also write the map as CSV");
  simulate->add_option("--csi", o.csi_out, "Write one frame of CSI as CSV");
  simulate->add_option("--csi-naf", o.csi_naf, "Steering NAF for --csi");

  auto* reconstruct = app.add_subcommand("reconstruct", "Dense spectrum from a minimal-sweep periodogram");
  reconstruct->add_option("-i,--in", o.in, "Minimal-sweep RAMP file")->required()->check(CLI::ExistingFile);
  reconstruct->add_option("-m,--method", o.method, "dft, spline or omp")
      ->check(CLI::IsMember({"dft", "spline", "omp"}));
  reconstruct->add_option("-o,--out", o.out, "Output RAMP file")->required();
  reconstruct->add_option("--peaks", o.csv_out, "Also write detected peaks as CSV");

  auto* detect = app.add_subcommand("detect", "Gate, CFAR and extract angular peaks from a periodogram");
  detect->add_option("-i,--in", o.in, "RAMP file")->required()->check(CLI::ExistingFile);
  detect->add_option("-o,--out", o.out, "Peaks CSV (default stdout)");

  auto* eval = app.add_subcommand("evaluate", "Run the method comparison and write reports");
  eval->add_option("-o,--out", o.out, "Output directory")->required();
  eval->add_option("--scenario", o.scenarios, "Restrict to these scenarios")->delimiter(',');
  eval->add_option("--method", o.methods, "Restrict to these methods")->delimiter(',');
  eval->add_option("--seeds", o.n_seeds, "Number of seeds")->check(CLI::PositiveNumber);
  eval->add_option("-j,--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*catalog) return cmd_catalog(o);
    if (*simulate) return cmd_simulate(o);
    if (*reconstruct) return cmd_reconstruct(o);
    if (*detect) return cmd_detect(o);
    if (*eval) return cmd_evaluate(o);
  } catch (const ContractViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
