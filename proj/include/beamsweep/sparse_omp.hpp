#pragma once

#include <vector>

#include <Eigen/Dense>

#include "beamsweep/beam_response.hpp"
#include "beamsweep/peak.hpp"

namespace beamsweep {

struct OmpConfig {
  int k_max = 5;
  double epsilon = 0.05;  // stop once ||R|| <= epsilon ||y||

  void validate() const;
};

struct OmpIteration {
  int index = 0;
  double residual_norm = 0.0;
  double max_abs_support_correlation = 0.0;  // max |D_S^T R| after the update
};

enum class OmpStop { residual, k_max, zero_correlation, repeated_index, zero_input };

struct SparseEstimate {
  std::vector<int> support;
  std::vector<double> coefficients;
  double residual_norm = 0.0;
  int iterations = 0;
  bool rank_deficient = false;         // D_S lost rank; solved by pseudoinverse
  bool negative_coefficients = false;  // model mismatch on magnitude data
  OmpStop stop = OmpStop::zero_input;
  std::vector<OmpIteration> trace;
};

// Rank threshold for the complete orthogonal decomposition used for the LS step.
inline constexpr double kOmpRankThreshold = 1e-10;

SparseEstimate omp(const Eigen::VectorXd& y, const Dictionary& dict, const OmpConfig& config);

// argmax |p_i|; exact ties go to the lowest index.
int omp_tie_break(const Eigen::VectorXd& correlations);

// One peak per support index at the candidate angle with power |a|^2, strongest first.
std::vector<PeakEstimate> sparse_to_peaks(const SparseEstimate& est, const Dictionary& dict, double range_m);

}  // namespace beamsweep
