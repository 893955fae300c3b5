#include "beamsweep/sparse_omp.hpp"

#include <algorithm>
#include <cmath>

#include "beamsweep/errors.hpp"

namespace beamsweep {

void OmpConfig::validate() const {
  if (k_max < 1) throw ConfigError("OMP k_max must be >= 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigError("OMP epsilon must be in [0, 1)");
}

int omp_tie_break(const Eigen::VectorXd& correlations) {
  if (correlations.size() == 0) throw InputError("no correlations to select from");
  Eigen::Index best = 0;
  double best_abs = std::abs(correlations(0));
  for (Eigen::Index i = 1; i < correlations.size(); ++i) {
    const double a = std::abs(correlations(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return static_cast<int>(best);
}

SparseEstimate omp(const Eigen::VectorXd& y, const Dictionary& dict, const OmpConfig& config) {
  config.validate();
  const Eigen::MatrixXd& D = dict.atoms;
  if (y.size() != D.rows()) throw InputError("measurement length does not match dictionary rows");

  SparseEstimate est;
  const double y_norm = y.norm();
  Eigen::VectorXd r = y;
  est.residual_norm = y_norm;
  if (y_norm == 0.0) return est;

  Eigen::MatrixXd ds(D.rows(), 0);
  Eigen::VectorXd a;
  est.stop = OmpStop::k_max;
  while (static_cast<int>(est.support.size()) < config.k_max) {
    if (est.residual_norm <= config.epsilon * y_norm) {
      est.stop = OmpStop::residual;
      break;
    }
    const Eigen::VectorXd p = D.transpose() * r;
    const int i = omp_tie_break(p);
    if (p(i) == 0.0) {
      est.stop = OmpStop::zero_correlation;
      break;
    }
    if (std::find(est.support.begin(), est.support.end(), i) != est.support.end()) {
      est.stop = OmpStop::repeated_index;
      break;
    }
    est.support.push_back(i);
    ds.conservativeResize(Eigen::NoChange, ds.cols() + 1);
    ds.col(ds.cols() - 1) = D.col(i);

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(kOmpRankThreshold);
    cod.compute(ds);
    if (cod.rank() < ds.cols()) est.rank_deficient = true;
    a = cod.solve(y);
    r = y - ds * a;
    est.residual_norm = r.norm();
    ++est.iterations;
    est.trace.push_back({i, est.residual_norm, (ds.transpose() * r).cwiseAbs().maxCoeff()});
  }
  if (est.stop == OmpStop::k_max && est.residual_norm <= config.epsilon * y_norm)
    est.stop = OmpStop::residual;

  est.coefficients.assign(a.data(), a.data() + a.size());
  est.negative_coefficients =
      std::any_of(est.coefficients.begin(), est.coefficients.end(), [](double c) { return c < 0.0; });
  return est;
}

std::vector<PeakEstimate> sparse_to_peaks(const SparseEstimate& est, const Dictionary& dict, double range_m) {
  if (est.coefficients.size() != est.support.size())
    throw ContractViolation("sparse estimate has mismatched support and coefficients");
  std::vector<PeakEstimate> peaks;
  for (std::size_t k = 0; k < est.support.size(); ++k) {
    const int idx = est.support[k];
    if (idx < 0 || idx >= static_cast<int>(dict.grid.size()))
      throw ContractViolation("support index outside the candidate grid");
    const double power = est.coefficients[k] * est.coefficients[k];
    if (power > 0.0) peaks.push_back({dict.grid[static_cast<std::size_t>(idx)], range_m, power});
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const PeakEstimate& a, const PeakEstimate& b) { return a.power > b.power; });
  return peaks;
}

}  // namespace beamsweep
