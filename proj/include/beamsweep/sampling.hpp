#pragma once

#include <vector>

#include "beamsweep/beam_response.hpp"

namespace beamsweep {

enum class SweepKind { minimal, oversampled };

struct SweepPlan {
  std::vector<NafAngle> beam_grid;
  SweepKind kind = SweepKind::minimal;
  int oversampling_factor = 1;
  int dwell_frames = 6;
  double frame_duration_s = 0.010;
  int coarray_order = 1;  // 2N-1; minimal spacing is 1/coarray_order

  static SweepPlan minimal(int n_1d, NafAngle limit, int dwell_frames = 6,
                           double frame_duration_s = 0.010);
  static SweepPlan oversampled(int n_1d, NafAngle limit, int factor, int dwell_frames = 6,
                               double frame_duration_s = 0.010);
};

enum class SampleMode {
  complex_ideal,  // coherent complex beam values
  magnitude,      // |value| only, as in the phase-incoherent sweep
};

struct AngularSweep {
  SweepPlan plan;
  std::vector<cdouble> values;  // one per beam; imaginary part 0 in magnitude mode
  SampleMode mode = SampleMode::complex_ideal;
};

// k / (2 n_1d - 1) for every integer k with |k / (2 n_1d - 1)| <= limit.
std::vector<NafAngle> minimal_naf_grid(int n_1d, NafAngle naf_limit);

// k / ((2 n_1d - 1) factor) for every integer k within the limit. Contains the minimal grid.
std::vector<NafAngle> oversampled_naf_grid(int n_1d, NafAngle naf_limit, int factor);

double sweep_duration(const SweepPlan& plan);

// Noise-free sweep straight from the beamformed response.
AngularSweep sample_sweep(const SweepPlan& plan, const ArrayGeometry& geom,
                          const BeamformingWeights& weights,
                          const std::vector<Scatterer>& scatterers, SampleMode mode);

// Dirichlet-kernel interpolation: value(l) = sum_k s_k D_M0(l - l_k).
// Throws ContractViolation unless the sweep sits on a contiguous k / M0 grid.
std::vector<cdouble> dft_interpolate(const AngularSweep& sweep, const std::vector<NafAngle>& target);
std::vector<double> dft_interpolate(const std::vector<NafAngle>& beams, const std::vector<double>& values,
                                    int order, const std::vector<NafAngle>& target);

// Natural cubic spline through (l_k, |s_k|), clamped at 0. Beyond the outer samples the
// spline continues linearly, which is the natural-boundary extension.
std::vector<double> spline_interpolate(const AngularSweep& sweep, const std::vector<NafAngle>& target);
std::vector<double> spline_interpolate(const std::vector<NafAngle>& beams, const std::vector<double>& values,
                                       const std::vector<NafAngle>& target);

}  // namespace beamsweep
