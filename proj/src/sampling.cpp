#include "beamsweep/sampling.hpp"

#include <cmath>
#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include "beamsweep/errors.hpp"

namespace beamsweep {

namespace {

constexpr double kGridTol = 1e-9;

int max_grid_index(int denom, double limit) {
  return static_cast<int>(std::floor(limit * denom + kGridTol));
}

std::vector<NafAngle> lattice(int denom, int kmax) {
  std::vector<NafAngle> g;
  g.reserve(static_cast<std::size_t>(2 * kmax + 1));
  for (int k = -kmax; k <= kmax; ++k) g.emplace_back(static_cast<double>(k) / denom);
  return g;
}

void check_limit(int n_1d, NafAngle limit) {
  if (n_1d < 1) throw ConfigError("n_1d must be >= 1");
  if (!(limit.value >= 0.0) || limit.value > 0.5) throw ConfigError("NAF limit must be in [0, 0.5]");
}

// Index k of each beam on the k / order lattice; throws if any beam is off-lattice
// or the lattice indices are not consecutive.
void check_minimal(const std::vector<NafAngle>& beams, int order) {
  if (order < 1) throw ContractViolation("minimal grid order must be >= 1");
  if (beams.empty()) throw ContractViolation("sweep has no beams");
  if (static_cast<int>(beams.size()) > order)
    throw ContractViolation("sweep has more beams than one period of the minimal grid");
  long prev = 0;
  for (std::size_t i = 0; i < beams.size(); ++i) {
    const double k = beams[i].value * order;
    const long ki = std::lround(k);
    if (std::abs(k - static_cast<double>(ki)) > kGridTol)
      throw ContractViolation("sweep is not on the minimal k/" + std::to_string(order) + " grid");
    if (i > 0 && ki != prev + 1) throw ContractViolation("minimal sweep grid is not contiguous");
    prev = ki;
  }
}

}  // namespace

std::vector<NafAngle> minimal_naf_grid(int n_1d, NafAngle naf_limit) {
  check_limit(n_1d, naf_limit);
  const int order = 2 * n_1d - 1;
  return lattice(order, max_grid_index(order, naf_limit.value));
}

std::vector<NafAngle> oversampled_naf_grid(int n_1d, NafAngle naf_limit, int factor) {
  check_limit(n_1d, naf_limit);
  if (factor < 1) throw ConfigError("oversampling factor must be >= 1");
  const int denom = (2 * n_1d - 1) * factor;
  return lattice(denom, max_grid_index(denom, naf_limit.value));
}

SweepPlan SweepPlan::minimal(int n_1d, NafAngle limit, int dwell_frames, double frame_duration_s) {
  SweepPlan p;
  p.beam_grid = minimal_naf_grid(n_1d, limit);
  p.kind = SweepKind::minimal;
  p.oversampling_factor = 1;
  p.dwell_frames = dwell_frames;
  p.frame_duration_s = frame_duration_s;
  p.coarray_order = 2 * n_1d - 1;
  return p;
}

SweepPlan SweepPlan::oversampled(int n_1d, NafAngle limit, int factor, int dwell_frames,
                                 double frame_duration_s) {
  SweepPlan p;
  p.beam_grid = oversampled_naf_grid(n_1d, limit, factor);
  p.kind = SweepKind::oversampled;
  p.oversampling_factor = factor;
  p.dwell_frames = dwell_frames;
  p.frame_duration_s = frame_duration_s;
  p.coarray_order = 2 * n_1d - 1;
  return p;
}

double sweep_duration(const SweepPlan& plan) {
  return static_cast<double>(plan.beam_grid.size()) * plan.dwell_frames * plan.frame_duration_s;
}

AngularSweep sample_sweep(const SweepPlan& plan, const ArrayGeometry& geom,
                          const BeamformingWeights& weights,
                          const std::vector<Scatterer>& scatterers, SampleMode mode) {
  AngularSweep s;
  s.plan = plan;
  s.mode = mode;
  s.values.reserve(plan.beam_grid.size());
  for (const auto& b : plan.beam_grid) {
    cdouble v = beamformed_response(geom, weights, scatterers, b);
    s.values.push_back(mode == SampleMode::magnitude ? cdouble(std::abs(v), 0.0) : v);
  }
  return s;
}

std::vector<cdouble> dft_interpolate(const AngularSweep& sweep, const std::vector<NafAngle>& target) {
  if (sweep.plan.kind != SweepKind::minimal)
    throw ContractViolation("Dirichlet interpolation needs a minimal-grid sweep");
  if (sweep.values.size() != sweep.plan.beam_grid.size())
    throw ContractViolation("sweep values do not match its beam grid");
  const int order = sweep.plan.coarray_order;
  check_minimal(sweep.plan.beam_grid, order);
  std::vector<cdouble> out(target.size(), 0.0);
  for (std::size_t t = 0; t < target.size(); ++t) {
    cdouble acc = 0.0;
    for (std::size_t k = 0; k < sweep.values.size(); ++k)
      acc += sweep.values[k] * dirichlet_kernel(target[t].value - sweep.plan.beam_grid[k].value, order);
    out[t] = acc;
  }
  return out;
}

std::vector<double> dft_interpolate(const std::vector<NafAngle>& beams, const std::vector<double>& values,
                                    int order, const std::vector<NafAngle>& target) {
  if (beams.size() != values.size()) throw ContractViolation("beam and value counts differ");
  check_minimal(beams, order);
  std::vector<double> out(target.size(), 0.0);
  for (std::size_t t = 0; t < target.size(); ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k)
      acc += values[k] * dirichlet_kernel(target[t].value - beams[k].value, order);
    out[t] = acc;
  }
  return out;
}

std::vector<double> spline_interpolate(const std::vector<NafAngle>& beams, const std::vector<double>& values,
                                       const std::vector<NafAngle>& target) {
  if (beams.size() != values.size()) throw InputError("beam and value counts differ");
  if (beams.size() < 4) throw InputError("spline interpolation needs at least 4 samples");
  const std::size_t n = beams.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = beams[i].value;
    y[i] = std::abs(values[i]);
    if (i > 0 && !(x[i] > x[i - 1])) throw InputError("spline abscissae must be strictly increasing");
  }
  std::unique_ptr<gsl_interp, decltype(&gsl_interp_free)> interp(
      gsl_interp_alloc(gsl_interp_cspline, n), &gsl_interp_free);
  std::unique_ptr<gsl_interp_accel, decltype(&gsl_interp_accel_free)> acc(
      gsl_interp_accel_alloc(), &gsl_interp_accel_free);
  if (!interp || !acc) throw std::bad_alloc();
  if (gsl_interp_init(interp.get(), x.data(), y.data(), n) != GSL_SUCCESS)
    throw InputError("spline initialization failed");

  auto eval = [&](double at) {
    double v = 0.0;
    gsl_interp_eval_e(interp.get(), x.data(), y.data(), at, acc.get(), &v);
    return v;
  };
  auto slope = [&](double at) {
    double d = 0.0;
    gsl_interp_eval_deriv_e(interp.get(), x.data(), y.data(), at, acc.get(), &d);
    return d;
  };

  std::vector<double> out(target.size());
  for (std::size_t t = 0; t < target.size(); ++t) {
    const double at = target[t].value;
    double v;
    if (at < x.front())
      v = y.front() + slope(x.front()) * (at - x.front());
    else if (at > x.back())
      v = y.back() + slope(x.back()) * (at - x.back());
    else
      v = eval(at);
    out[t] = v < 0.0 ? 0.0 : v;
  }
  return out;
}

std::vector<double> spline_interpolate(const AngularSweep& sweep, const std::vector<NafAngle>& target) {
  std::vector<double> mags(sweep.values.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(sweep.values[i]);
  return spline_interpolate(sweep.plan.beam_grid, mags, target);
}

}  // namespace beamsweep
