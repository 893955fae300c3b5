#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beamsweep/detection.hpp"
#include "beamsweep/sampling.hpp"
#include "beamsweep/scenario.hpp"
#include "beamsweep/sparse_omp.hpp"

namespace beamsweep {

enum class Method { oversampled, dft, spline, omp };

std::string to_string(Method m);
Method method_from_string(const std::string& s);
const std::vector<Method>& all_methods();

struct PipelineConfig {
  RadioConfig radio;
  int n_1d = 8;
  double spacing_wavelengths = 0.5;
  double sweep_limit_deg = 33.0;
  int oversampling_factor = 10;
  int frames_per_beam = 24;
  int averaged_frames = 6;
  PhaseMode phase_mode = PhaseMode::poc_faithful;
  bool flat_coarray_weights = false;
  AtomModel atom_model = AtomModel::matched;
  OmpConfig omp;
  DetectionConfig detection;

  void validate() const;

  ArrayGeometry geometry() const;
  BeamformingWeights weights() const;
  NafAngle sweep_limit() const;
  SweepPlan minimal_plan() const;
  SweepPlan oversampled_plan() const;
};

// Zero-Doppler range power profiles of every fine-grid beam and frame.
struct Acquisition {
  std::vector<NafAngle> beam_grid;  // oversampled grid
  std::vector<double> range_axis;
  int frames = 0;
  std::vector<std::vector<std::vector<double>>> power;  // [beam][frame][range bin]
};

Acquisition acquire(const PipelineConfig& config, const Scene& scene, double noise_power, std::uint64_t seed,
                    int frames);

// Range x beam amplitude map: per cell, mean of sqrt(power) over frames [first, first + count).
Eigen::MatrixXd averaged_amplitude(const Acquisition& acq, int first_frame, int count);

// Columns of the oversampled grid that coincide with the minimal grid.
std::vector<int> minimal_columns(const PipelineConfig& config);

struct MethodResult {
  Method method = Method::oversampled;
  Eigen::MatrixXd amplitude;  // range x fine grid, unclamped
  std::vector<PeakEstimate> peaks;
  std::optional<SparseEstimate> sparse;
  int beams_used = 0;

  RangeAngleMap power_map(const std::vector<double>& range_axis, const std::vector<NafAngle>& grid) const;
};

// Reconstruct / detect from an oversampled amplitude map. Minimal-grid methods only read
// the minimal columns.
class MethodRunner {
 public:
  explicit MethodRunner(const PipelineConfig& config);

  MethodResult run(Method method, const Eigen::MatrixXd& fine_amplitude, const std::vector<double>& range_axis) const;

  // Minimal-grid input: range x minimal beams.
  MethodResult run_minimal(Method method, const Eigen::MatrixXd& minimal_amplitude,
                           const std::vector<double>& range_axis) const;

  const std::vector<NafAngle>& fine_grid() const { return fine_grid_; }
  const std::vector<NafAngle>& minimal_grid() const { return minimal_grid_; }
  const Dictionary& dictionary() const { return dict_; }
  const PipelineConfig& config() const { return config_; }

 private:
  PipelineConfig config_;
  std::vector<NafAngle> fine_grid_;
  std::vector<NafAngle> minimal_grid_;
  std::vector<int> minimal_cols_;
  Dictionary dict_;
};

}  // namespace beamsweep
