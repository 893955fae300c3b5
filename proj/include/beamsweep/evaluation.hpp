#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "beamsweep/pipeline.hpp"

namespace beamsweep {

struct GroundTruth {
  std::array<NafAngle, 2> naf{};
  std::array<int, 2> n_estimates{0, 0};
  std::array<bool, 2> fallback{false, false};  // no frame matched; nominal position used
};

// Median over single-frame estimates. Each frame's peaks are assigned to the nearest
// nominal target; if two peaks claim one target the closer one wins.
GroundTruth estimate_ground_truth(const std::vector<std::vector<PeakEstimate>>& per_frame,
                                  const std::array<NafAngle, 2>& nominal);

double median(std::vector<double> values);

struct RunEstimate {
  std::string scenario;
  ReflectorKind kind = ReflectorKind::octahedral;
  Method method = Method::oversampled;
  std::uint64_t seed = 0;
  std::array<double, 2> truth{};
  std::vector<PeakEstimate> peaks;
};

struct TargetMatch {
  bool miss = true;
  double error = 0.0;  // estimate - truth
};

// Nearest estimate in NAF per target; an empty peak list is a miss for both targets.
std::array<TargetMatch, 2> match_targets(const std::array<double, 2>& truth, const std::vector<PeakEstimate>& peaks);

struct RmseCell {
  std::string group;   // Reflectors, Walls, Combined, Total, or a scenario name
  std::string target;  // T1, T2, all
  Method method = Method::oversampled;
  double rmse = 0.0;
  double error_variance = 0.0;
  int matched = 0;
  int misses = 0;
  int hits = 0;  // matched with |error| <= hit radius
  double detection_rate = 0.0;
};

struct RmseReport {
  double hit_radius = 0.0;
  std::vector<RmseCell> cells;

  const RmseCell& at(const std::string& group, const std::string& target, Method method) const;
  const RmseCell* find(const std::string& group, const std::string& target, Method method) const;
};

// Pools squared errors from raw matches for every (group, target, method) cell.
RmseReport score_rmse(const std::vector<RunEstimate>& runs, double hit_radius);

// Cross-track arc length between two NAF positions at `range_m`:
// r (asin(l2 / s) - asin(l1 / s)) with s = d / lambda.
double naf_to_cross_track_m(double naf_delta, double range_m, double reference_naf = 0.0,
                            double spacing_wavelengths = 0.5);

struct ComparisonResult {
  std::vector<RunEstimate> runs;
  std::vector<GroundTruth> ground_truth;  // per seed
  std::map<Method, RangeAngleMap> first_seed_maps;
};

std::uint64_t scenario_seed(std::uint64_t master, const std::string& scenario, std::uint64_t index);

ComparisonResult run_comparison(const Scenario& scenario, const std::vector<Method>& methods,
                                const std::vector<std::uint64_t>& seeds, const PipelineConfig& config);

struct EvaluationResult {
  std::vector<Scenario> scenarios;
  std::vector<std::uint64_t> seeds;
  std::vector<RunEstimate> runs;
  std::map<std::string, std::map<Method, RangeAngleMap>> first_seed_maps;
  RmseReport report;
};

// Every scenario x method x seed. Seeds are master seeds; each scenario derives its own
// stream from them. `threads` > 1 spreads scenario/seed jobs; results do not depend on it.
EvaluationResult evaluate(const std::vector<Scenario>& scenarios, const std::vector<Method>& methods,
                          const std::vector<std::uint64_t>& seeds, const PipelineConfig& config, int threads = 1);

void write_report_json(std::ostream& out, const EvaluationResult& result, const PipelineConfig& config);
void write_report_csv(std::ostream& out, const RmseReport& report);
void write_peaks_csv(std::ostream& out, const std::vector<RunEstimate>& runs, const std::string& frame_set);

}  // namespace beamsweep
