#include "beamsweep/pipeline.hpp"

#include <cmath>

#include "beamsweep/errors.hpp"
#include "beamsweep/random.hpp"

namespace beamsweep {

std::string to_string(Method m) {
  switch (m) {
    case Method::oversampled: return "oversampled";
    case Method::dft: return "dft";
    case Method::spline: return "spline";
    case Method::omp: return "omp";
  }
  throw ContractViolation("unknown method");
}

Method method_from_string(const std::string& s) {
  for (Method m : all_methods())
    if (to_string(m) == s) return m;
  throw ConfigError("unknown method '" + s + "' (expected oversampled, dft, spline or omp)");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::oversampled, Method::dft, Method::spline, Method::omp};
  return methods;
}

void PipelineConfig::validate() const {
  radio.validate();
  if (n_1d < 1) throw ConfigError("array needs n_1d >= 1");
  if (!(spacing_wavelengths > 0 && spacing_wavelengths <= 0.5))
    throw ConfigError("element spacing must be in (0, 0.5] wavelengths");
  if (!(sweep_limit_deg > 0 && sweep_limit_deg < 90)) throw ConfigError("sweep limit must be in (0, 90) degrees");
  if (oversampling_factor < 1) throw ConfigError("oversampling factor must be >= 1");
  if (averaged_frames < 1 || frames_per_beam < averaged_frames)
    throw ConfigError("need 1 <= averaged_frames <= frames_per_beam");
  omp.validate();
  detection.cfar.validate();
  if (!(detection.peaks.resolution > 0)) throw ConfigError("peak resolution must be positive");
  if (detection.peaks.max_peaks < 1) throw ConfigError("max_peaks must be >= 1");
}

ArrayGeometry PipelineConfig::geometry() const {
  return ArrayGeometry::uniform_linear(n_1d, n_1d, spacing_wavelengths);
}

BeamformingWeights PipelineConfig::weights() const {
  const auto geom = geometry();
  return flat_coarray_weights ? BeamformingWeights::flat_coarray(geom) : BeamformingWeights::uniform(geom);
}

NafAngle PipelineConfig::sweep_limit() const {
  return naf_of_direction(Direction::from_degrees(sweep_limit_deg, 0.0), spacing_wavelengths);
}

SweepPlan PipelineConfig::minimal_plan() const {
  return SweepPlan::minimal(n_1d, sweep_limit(), averaged_frames, radio.frame_duration_s);
}

SweepPlan PipelineConfig::oversampled_plan() const {
  return SweepPlan::oversampled(n_1d, sweep_limit(), oversampling_factor, averaged_frames, radio.frame_duration_s);
}

Acquisition acquire(const PipelineConfig& config, const Scene& scene, double noise_power, std::uint64_t seed,
                    int frames) {
  config.validate();
  if (frames < 1) throw ConfigError("acquisition needs at least one frame");
  const auto geom = config.geometry();
  const auto weights = config.weights();
  Acquisition acq;
  acq.beam_grid = config.oversampled_plan().beam_grid;
  acq.range_axis = config.radio.range_axis();
  acq.frames = frames;
  acq.power.resize(acq.beam_grid.size());
  for (std::size_t b = 0; b < acq.beam_grid.size(); ++b) {
    const FrameSynthesizer synth(config.radio, scene, geom, weights, acq.beam_grid[b]);
    acq.power[b].reserve(static_cast<std::size_t>(frames));
    for (int f = 0; f < frames; ++f)
      acq.power[b].push_back(synth.zero_doppler_frame(noise_power, derive_seed(seed, b, static_cast<std::uint64_t>(f)),
                                                      config.phase_mode));
  }
  return acq;
}

Eigen::MatrixXd averaged_amplitude(const Acquisition& acq, int first_frame, int count) {
  if (first_frame < 0 || count < 1 || first_frame + count > acq.frames)
    throw InputError("frame window outside the acquisition");
  const auto n_range = static_cast<Eigen::Index>(acq.range_axis.size());
  Eigen::MatrixXd amp(n_range, static_cast<Eigen::Index>(acq.beam_grid.size()));
  std::vector<double> per_frame(static_cast<std::size_t>(count));
  for (std::size_t b = 0; b < acq.beam_grid.size(); ++b)
    for (Eigen::Index r = 0; r < n_range; ++r) {
      for (int f = 0; f < count; ++f)
        per_frame[f] = std::sqrt(acq.power[b][static_cast<std::size_t>(first_frame + f)][static_cast<std::size_t>(r)]);
      amp(r, static_cast<Eigen::Index>(b)) = average_frames(per_frame, count);
    }
  return amp;
}

std::vector<int> minimal_columns(const PipelineConfig& config) {
  const auto fine = config.oversampled_plan().beam_grid;
  const auto minimal = config.minimal_plan().beam_grid;
  std::vector<int> cols;
  for (const auto& m : minimal) {
    int found = -1;
    for (std::size_t j = 0; j < fine.size(); ++j)
      if (std::abs(fine[j].value - m.value) < 1e-12) found = static_cast<int>(j);
    if (found < 0) throw ContractViolation("minimal beam missing from the oversampled grid");
    cols.push_back(found);
  }
  return cols;
}

RangeAngleMap MethodResult::power_map(const std::vector<double>& range_axis, const std::vector<NafAngle>& grid) const {
  RangeAngleMap map;
  map.range_axis = range_axis;
  map.angle_axis = grid;
  map.power = amplitude.cwiseMax(0.0).cwiseAbs2();
  return map;
}

MethodRunner::MethodRunner(const PipelineConfig& config)
    : config_(config),
      fine_grid_(config.oversampled_plan().beam_grid),
      minimal_grid_(config.minimal_plan().beam_grid),
      minimal_cols_(minimal_columns(config)) {
  config_.validate();
  dict_ = build_dictionary(config_.geometry(), config_.weights(), minimal_grid_, fine_grid_, config_.atom_model);
}

MethodResult MethodRunner::run(Method method, const Eigen::MatrixXd& fine_amplitude,
                               const std::vector<double>& range_axis) const {
  if (fine_amplitude.cols() != static_cast<Eigen::Index>(fine_grid_.size()))
    throw InputError("amplitude map does not cover the oversampled grid");
  if (method != Method::oversampled) {
    Eigen::MatrixXd minimal(fine_amplitude.rows(), static_cast<Eigen::Index>(minimal_cols_.size()));
    for (std::size_t k = 0; k < minimal_cols_.size(); ++k)
      minimal.col(static_cast<Eigen::Index>(k)) = fine_amplitude.col(minimal_cols_[k]);
    return run_minimal(method, minimal, range_axis);
  }
  MethodResult res;
  res.method = method;
  res.amplitude = fine_amplitude;
  res.beams_used = static_cast<int>(fine_grid_.size());
  res.peaks = detect_peaks(res.amplitude, range_axis, fine_grid_, config_.detection);
  return res;
}

MethodResult MethodRunner::run_minimal(Method method, const Eigen::MatrixXd& minimal_amplitude,
                                       const std::vector<double>& range_axis) const {
  if (method == Method::oversampled) throw ContractViolation("oversampled method needs the full sweep");
  if (minimal_amplitude.cols() != static_cast<Eigen::Index>(minimal_grid_.size()))
    throw InputError("amplitude map does not match the minimal grid");
  if (minimal_amplitude.rows() != static_cast<Eigen::Index>(range_axis.size()))
    throw InputError("amplitude map does not match the range axis");

  const auto rows = minimal_amplitude.rows();
  const auto fine_cols = static_cast<Eigen::Index>(fine_grid_.size());
  MethodResult res;
  res.method = method;
  res.beams_used = static_cast<int>(minimal_grid_.size());
  res.amplitude = Eigen::MatrixXd::Zero(rows, fine_cols);

  if (method == Method::dft || method == Method::spline) {
    std::vector<double> samples(minimal_grid_.size());
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < samples.size(); ++k) samples[k] = minimal_amplitude(r, static_cast<Eigen::Index>(k));
      const auto dense = method == Method::dft
                             ? dft_interpolate(minimal_grid_, samples, 2 * config_.n_1d - 1, fine_grid_)
                             : spline_interpolate(minimal_grid_, samples, fine_grid_);
      for (Eigen::Index j = 0; j < fine_cols; ++j) res.amplitude(r, j) = dense[static_cast<std::size_t>(j)];
    }
    res.peaks = detect_peaks(res.amplitude, range_axis, fine_grid_, config_.detection);
    return res;
  }

  // OMP on the per-beam collapsed value over the gated range.
  const auto gated = gate_rows(range_axis, config_.detection.rear_wall_gate);
  Eigen::VectorXd y(static_cast<Eigen::Index>(minimal_grid_.size()));
  std::vector<int> beam_row(minimal_grid_.size());
  for (std::size_t k = 0; k < minimal_grid_.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    int best = gated.front();
    for (int r : gated)
      if (minimal_amplitude(r, col) > minimal_amplitude(best, col)) best = r;
    beam_row[k] = best;
    y(col) = minimal_amplitude(best, col);
  }
  res.sparse = omp(y, dict_, config_.omp);
  auto candidates = sparse_to_peaks(*res.sparse, dict_, 0.0);
  auto nearest_beam = [&](double naf) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < minimal_grid_.size(); ++k)
      if (std::abs(minimal_grid_[k].value - naf) < std::abs(minimal_grid_[best].value - naf)) best = k;
    return best;
  };
  for (auto& p : candidates) p.range_m = range_axis[static_cast<std::size_t>(beam_row[nearest_beam(p.naf.value)])];
  for (std::size_t k = 0; k < res.sparse->support.size(); ++k) {
    const int j = res.sparse->support[k];
    const int r = beam_row[nearest_beam(dict_.grid[static_cast<std::size_t>(j)].value)];
    res.amplitude(r, j) += std::abs(res.sparse->coefficients[k]);
  }
  res.peaks = resolve_peaks(std::move(candidates), config_.detection.peaks.resolution, config_.detection.peaks.max_peaks);
  return res;
}

}  // namespace beamsweep
