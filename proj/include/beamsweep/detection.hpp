#pragma once

#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "beamsweep/ofdm_scene.hpp"
#include "beamsweep/peak.hpp"

namespace beamsweep {

struct CfarConfig {
  double p_fa = 1e-6;
  int n_training = 8;  // per side
  int n_guard = 2;     // per side

  void validate() const;
};

// alpha = N_t (p_fa^(-1/N_t) - 1) for N_t averaged training cells.
double cfar_alpha(int n_training_total, double p_fa);

// Cell-averaging CFAR along a power profile. Edge cells average whatever training
// cells exist on either side and use the alpha for that count.
std::vector<bool> ca_cfar(const std::vector<double>& profile, const CfarConfig& config);

// Indices of range bins outside the closed exclusion interval. An empty interval
// (min > max) keeps everything.
std::vector<int> gate_rows(const std::vector<double>& range_axis, std::pair<double, double> exclude);

RangeAngleMap gate_range(const RangeAngleMap& map, std::pair<double, double> exclude);

// Angular spectrum on an amplitude scale. Values may be negative (unclamped Dirichlet
// reconstructions); peak power is reported as value^2.
struct AngularSpectrum {
  std::vector<NafAngle> grid;
  std::vector<double> values;
  std::vector<bool> detected;  // empty means every bin is eligible
  std::vector<double> range_m;  // per bin; empty means 0
};

struct PeakSearchOptions {
  double resolution = 1.0 / 15.0;
  int max_peaks = 2;
  bool parabolic_refinement = true;
  bool require_local_max = true;
  // A candidate must not be exceeded by any bin within this NAF distance (always at
  // least the adjacent bins). 0 checks only the adjacent bins.
  double local_max_halfwidth = 1.0 / 30.0;
};

// Iterative global-max extraction. Each pick removes the closed interval of half-width
// `resolution` around its bin from later searches.
std::vector<PeakEstimate> extract_peaks(const AngularSpectrum& spectrum, const PeakSearchOptions& options);
std::vector<PeakEstimate> extract_peaks(const std::vector<NafAngle>& grid, const std::vector<double>& power,
                                        double resolution, int max_peaks);

struct DetectionConfig {
  CfarConfig cfar;
  // Rear-wall exclusion, closed interval; the upper end defaults to the end of the axis.
  std::pair<double, double> rear_wall_gate{21.0, std::numeric_limits<double>::infinity()};
  PeakSearchOptions peaks;
};

// Rear-wall gate, CA-CFAR down every angle column on clamped power, then per column the
// strongest remaining row; the column is eligible if that row was CFAR-detected.
AngularSpectrum collapse_map(const Eigen::MatrixXd& amplitude, const std::vector<double>& range_axis,
                             const std::vector<NafAngle>& angle_axis, const DetectionConfig& config);

std::vector<PeakEstimate> detect_peaks(const Eigen::MatrixXd& amplitude, const std::vector<double>& range_axis,
                                       const std::vector<NafAngle>& angle_axis, const DetectionConfig& config);

// Same chain on a power map (amplitude = sqrt(power)).
std::vector<PeakEstimate> detect_peaks(const RangeAngleMap& map, const DetectionConfig& config);

// Keep the strongest peaks that are pairwise at least `resolution` apart.
std::vector<PeakEstimate> resolve_peaks(std::vector<PeakEstimate> candidates, double resolution, int max_peaks);

}  // namespace beamsweep
