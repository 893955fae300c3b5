#include "beamsweep/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>
#include <tuple>

#include "beamsweep/config.hpp"
#include "beamsweep/errors.hpp"
#include "beamsweep/random.hpp"

namespace beamsweep {

namespace {

const char* target_label(int t) { return t == 0 ? "T1" : "T2"; }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

GroundTruth estimate_ground_truth(const std::vector<std::vector<PeakEstimate>>& per_frame,
                                  const std::array<NafAngle, 2>& nominal) {
  std::array<std::vector<double>, 2> picks;
  for (const auto& peaks : per_frame) {
    std::array<double, 2> best_dist{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    std::array<double, 2> best_naf{};
    for (const auto& p : peaks) {
      const double d0 = std::abs(p.naf.value - nominal[0].value);
      const double d1 = std::abs(p.naf.value - nominal[1].value);
      const int t = d1 < d0 ? 1 : 0;
      const double d = std::min(d0, d1);
      if (d < best_dist[t]) {
        best_dist[t] = d;
        best_naf[t] = p.naf.value;
      }
    }
    for (int t = 0; t < 2; ++t)
      if (std::isfinite(best_dist[t])) picks[t].push_back(best_naf[t]);
  }
  GroundTruth gt;
  for (int t = 0; t < 2; ++t) {
    gt.n_estimates[t] = static_cast<int>(picks[t].size());
    if (picks[t].empty()) {
      gt.naf[t] = nominal[t];
      gt.fallback[t] = true;
    } else {
      gt.naf[t] = NafAngle(median(picks[t]));
    }
  }
  return gt;
}

std::array<TargetMatch, 2> match_targets(const std::array<double, 2>& truth, const std::vector<PeakEstimate>& peaks) {
  std::array<TargetMatch, 2> out;
  for (int t = 0; t < 2; ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : peaks) {
      const double e = p.naf.value - truth[t];
      // Ties go to the smaller signed error so the result does not depend on peak order.
      if (std::abs(e) < best || (std::abs(e) == best && e < out[t].error)) {
        best = std::abs(e);
        out[t] = {false, e};
      }
    }
  }
  return out;
}

const RmseCell* RmseReport::find(const std::string& group, const std::string& target, Method method) const {
  for (const auto& c : cells)
    if (c.group == group && c.target == target && c.method == method) return &c;
  return nullptr;
}

const RmseCell& RmseReport::at(const std::string& group, const std::string& target, Method method) const {
  if (const auto* c = find(group, target, method)) return *c;
  throw InputError("no RMSE cell " + group + "/" + target + "/" + to_string(method));
}

RmseReport score_rmse(const std::vector<RunEstimate>& runs, double hit_radius) {
  using Key = std::tuple<std::string, std::string, int>;
  struct Acc {
    std::vector<double> errors;
    int misses = 0;
  };
  std::map<Key, Acc> acc;
  std::vector<std::string> groups{"Reflectors", "Walls", "Combined", "Total"};
  std::vector<Method> methods;
  for (const auto& run : runs) {
    if (std::find(groups.begin(), groups.end(), run.scenario) == groups.end()) groups.push_back(run.scenario);
    if (std::find(methods.begin(), methods.end(), run.method) == methods.end()) methods.push_back(run.method);
  }
  std::sort(methods.begin(), methods.end());

  for (const auto& run : runs) {
    const auto matches = match_targets(run.truth, run.peaks);
    const std::string kind_group = run.kind == ReflectorKind::octahedral ? "Reflectors" : "Walls";
    const int m = static_cast<int>(run.method);
    for (int t = 0; t < 2; ++t) {
      const std::string tl = target_label(t);
      for (const Key& k : {Key{kind_group, tl, m}, Key{kind_group, "all", m}, Key{"Combined", tl, m},
                           Key{"Total", "all", m}, Key{run.scenario, tl, m}, Key{run.scenario, "all", m}}) {
        auto& a = acc[k];
        if (matches[t].miss)
          ++a.misses;
        else
          a.errors.push_back(matches[t].error);
      }
    }
  }

  RmseReport report;
  report.hit_radius = hit_radius;
  for (const auto& g : groups)
    for (const std::string t : {"T1", "T2", "all"})
      for (Method method : methods) {
        auto it = acc.find(Key{g, t, static_cast<int>(method)});
        if (it == acc.end()) continue;
        const auto& a = it->second;
        RmseCell c;
        c.group = g;
        c.target = t;
        c.method = method;
        c.matched = static_cast<int>(a.errors.size());
        c.misses = a.misses;
        if (!a.errors.empty()) {
          double sq = 0.0, sum = 0.0;
          for (double e : a.errors) {
            sq += e * e;
            sum += e;
            if (std::abs(e) <= hit_radius) ++c.hits;
          }
          const double n = static_cast<double>(a.errors.size());
          c.rmse = std::sqrt(sq / n);
          const double mean = sum / n;
          double var = 0.0;
          for (double e : a.errors) var += (e - mean) * (e - mean);
          c.error_variance = var / n;
        }
        const int total = c.matched + c.misses;
        c.detection_rate = total > 0 ? static_cast<double>(c.hits) / total : 0.0;
        report.cells.push_back(c);
      }
  return report;
}

double naf_to_cross_track_m(double naf_delta, double range_m, double reference_naf, double spacing_wavelengths) {
  if (!(spacing_wavelengths > 0)) throw ConfigError("spacing must be positive");
  const double a = reference_naf / spacing_wavelengths;
  const double b = (reference_naf + naf_delta) / spacing_wavelengths;
  if (std::abs(a) > 1.0 || std::abs(b) > 1.0) throw InputError("NAF outside the visible region");
  return range_m * (std::asin(b) - std::asin(a));
}

std::uint64_t scenario_seed(std::uint64_t master, const std::string& scenario, std::uint64_t index) {
  return derive_seed(master + index, fnv1a(scenario));
}

ComparisonResult run_comparison(const Scenario& scenario, const std::vector<Method>& methods,
                                const std::vector<std::uint64_t>& seeds, const PipelineConfig& config) {
  std::string where = "scenario " + scenario.name;
  ComparisonResult out;
  try {
    scenario.validate();
    config.validate();
    const MethodRunner runner(config);
    const auto geom = config.geometry();
    const auto weights = config.weights();
    const double noise = scenario_noise_power(scenario, config.radio, geom, weights);

    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const std::uint64_t seed = seeds[si];
      where = "scenario " + scenario.name + ", seed " + std::to_string(seed);
      const Scene scene = build_scene(scenario, seed);
      const Acquisition acq = acquire(config, scene, noise, derive_seed(seed, 0xacc), config.frames_per_beam);

      std::vector<std::vector<PeakEstimate>> per_frame;
      for (int f = 0; f < acq.frames; ++f)
        per_frame.push_back(runner.run(Method::oversampled, averaged_amplitude(acq, f, 1), acq.range_axis).peaks);
      const GroundTruth gt = estimate_ground_truth(per_frame, scenario.target_nafs);
      out.ground_truth.push_back(gt);

      const Eigen::MatrixXd amp = averaged_amplitude(acq, 0, config.averaged_frames);
      for (Method m : methods) {
        MethodResult res = runner.run(m, amp, acq.range_axis);
        if (si == 0) out.first_seed_maps.emplace(m, res.power_map(acq.range_axis, runner.fine_grid()));
        out.runs.push_back({scenario.name, scenario.kind, m, seed, {gt.naf[0].value, gt.naf[1].value},
                            std::move(res.peaks)});
      }
    }
  } catch (const ContractViolation& e) {
    throw ContractViolation(where + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  return out;
}

EvaluationResult evaluate(const std::vector<Scenario>& scenarios, const std::vector<Method>& methods,
                          const std::vector<std::uint64_t>& seeds, const PipelineConfig& config, int threads) {
  config.validate();
  if (scenarios.empty() || methods.empty() || seeds.empty())
    throw ConfigError("evaluation needs scenarios, methods and seeds");

  const std::size_t n_jobs = scenarios.size() * seeds.size();
  std::vector<ComparisonResult> results(n_jobs);
  std::vector<std::exception_ptr> errors(n_jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < n_jobs; job = next++) {
      const auto& sc = scenarios[job / seeds.size()];
      const std::size_t si = job % seeds.size();
      try {
        results[job] = run_comparison(sc, methods, {scenario_seed(seeds[si], sc.name, 0)}, config);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(n_jobs)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  EvaluationResult out;
  out.scenarios = scenarios;
  out.seeds = seeds;
  for (std::size_t job = 0; job < n_jobs; ++job) {
    auto& r = results[job];
    if (job % seeds.size() == 0) out.first_seed_maps[scenarios[job / seeds.size()].name] = std::move(r.first_seed_maps);
    for (auto& run : r.runs) out.runs.push_back(std::move(run));
  }
  out.report = score_rmse(out.runs, config.detection.peaks.resolution / 2.0);
  return out;
}

void write_report_json(std::ostream& out, const EvaluationResult& result, const PipelineConfig& config) {
  nlohmann::ordered_json j;
  j["pipeline"] = pipeline_to_json(config);
  j["seeds"] = result.seeds;
  auto& sc = j["scenarios"] = nlohmann::ordered_json::array();
  for (const auto& s : result.scenarios)
    sc.push_back({{"name", s.name},
                  {"kind", to_string(s.kind)},
                  {"separation_naf", s.separation()},
                  {"amplitude_db", s.amplitude_db},
                  {"snr_db", s.snr_db}});
  j["hit_radius_naf"] = result.report.hit_radius;
  auto& cells = j["rmse"] = nlohmann::ordered_json::array();
  for (const auto& c : result.report.cells)
    cells.push_back({{"group", c.group},
                     {"target", c.target},
                     {"method", to_string(c.method)},
                     {"rmse_naf", c.rmse},
                     {"error_variance", c.error_variance},
                     {"matched", c.matched},
                     {"misses", c.misses},
                     {"hits", c.hits},
                     {"detection_rate", c.detection_rate}});
  auto& runs = j["runs"] = nlohmann::ordered_json::array();
  for (const auto& r : result.runs) {
    nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
    for (const auto& p : r.peaks) peaks.push_back({{"naf", p.naf.value}, {"range_m", p.range_m}, {"power", p.power}});
    runs.push_back({{"scenario", r.scenario},
                    {"method", to_string(r.method)},
                    {"seed", r.seed},
                    {"truth", r.truth},
                    {"peaks", peaks}});
  }
  out << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const RmseReport& report) {
  out << "group,target,method,rmse_naf,error_variance,matched,misses,hits,detection_rate\n";
  out << std::setprecision(10);
  for (const auto& c : report.cells)
    out << c.group << ',' << c.target << ',' << to_string(c.method) << ',' << c.rmse << ',' << c.error_variance << ','
        << c.matched << ',' << c.misses << ',' << c.hits << ',' << c.detection_rate << '\n';
}

void write_peaks_csv(std::ostream& out, const std::vector<RunEstimate>& runs, const std::string& frame_set) {
  out << "scenario,method,frame_set,peak_index,naf,range_m,power_db\n";
  out << std::setprecision(10);
  for (const auto& r : runs)
    for (std::size_t i = 0; i < r.peaks.size(); ++i) {
      const auto& p = r.peaks[i];
      out << r.scenario << ',' << to_string(r.method) << ",seed" << r.seed << ':' << frame_set << ',' << i << ','
          << p.naf.value << ',' << p.range_m << ',' << 10.0 * std::log10(p.power) << '\n';
    }
}

}  // namespace beamsweep
