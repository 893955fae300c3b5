#include "beamsweep/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "beamsweep/errors.hpp"

namespace beamsweep {

namespace {

constexpr double kNafTol = 1e-12;

}  // namespace

void CfarConfig::validate() const {
  if (!(p_fa > 0.0 && p_fa < 1.0)) throw ConfigError("CFAR p_fa must be in (0, 1)");
  if (n_training < 1) throw ConfigError("CFAR needs at least one training cell per side");
  if (n_guard < 0) throw ConfigError("CFAR guard cells must be nonnegative");
}

double cfar_alpha(int n_training_total, double p_fa) {
  if (n_training_total < 1) throw ConfigError("CFAR needs at least one training cell");
  const double n = n_training_total;
  return n * (std::pow(p_fa, -1.0 / n) - 1.0);
}

std::vector<bool> ca_cfar(const std::vector<double>& profile, const CfarConfig& config) {
  config.validate();
  const int len = static_cast<int>(profile.size());
  const int t = config.n_training;
  const int g = config.n_guard;
  if (len <= 2 * (t + g)) throw InputError("profile too short for the CFAR window");

  std::vector<double> prefix(static_cast<std::size_t>(len) + 1, 0.0);
  for (int i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + profile[i];
  auto window_sum = [&](int lo, int hi) {  // [lo, hi], clipped
    lo = std::max(lo, 0);
    hi = std::min(hi, len - 1);
    if (hi < lo) return std::make_pair(0.0, 0);
    return std::make_pair(prefix[hi + 1] - prefix[lo], hi - lo + 1);
  };

  std::vector<bool> mask(static_cast<std::size_t>(len), false);
  for (int i = 0; i < len; ++i) {
    auto [ls, ln] = window_sum(i - g - t, i - g - 1);
    auto [rs, rn] = window_sum(i + g + 1, i + g + t);
    const int n = ln + rn;
    const double mean = (ls + rs) / n;
    mask[i] = profile[i] > cfar_alpha(n, config.p_fa) * mean;
  }
  return mask;
}

std::vector<int> gate_rows(const std::vector<double>& range_axis, std::pair<double, double> exclude) {
  std::vector<int> keep;
  for (std::size_t i = 0; i < range_axis.size(); ++i) {
    const double r = range_axis[i];
    if (exclude.first <= exclude.second && r >= exclude.first && r <= exclude.second) continue;
    keep.push_back(static_cast<int>(i));
  }
  if (keep.empty()) throw InputError("range exclusion removes the whole axis");
  return keep;
}

RangeAngleMap gate_range(const RangeAngleMap& map, std::pair<double, double> exclude) {
  const auto keep = gate_rows(map.range_axis, exclude);
  RangeAngleMap out;
  out.angle_axis = map.angle_axis;
  out.power.resize(static_cast<Eigen::Index>(keep.size()), map.power.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.power.row(static_cast<Eigen::Index>(k)) = map.power.row(keep[k]);
    out.range_axis.push_back(map.range_axis[static_cast<std::size_t>(keep[k])]);
  }
  return out;
}

std::vector<PeakEstimate> extract_peaks(const AngularSpectrum& spectrum, const PeakSearchOptions& options) {
  const std::size_t n = spectrum.values.size();
  if (n == 0) throw InputError("angular spectrum is empty");
  if (spectrum.grid.size() != n) throw InputError("angular spectrum grid and values differ in length");
  if (!spectrum.detected.empty() && spectrum.detected.size() != n)
    throw InputError("detection mask length differs from the spectrum");
  if (!spectrum.range_m.empty() && spectrum.range_m.size() != n)
    throw InputError("range list length differs from the spectrum");
  if (!(options.resolution > 0.0)) throw ConfigError("peak resolution must be positive");

  const auto& v = spectrum.values;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<bool> eligible(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = v[i] > 0.0 && (spectrum.detected.empty() || spectrum.detected[i]);
    if (ok && options.require_local_max) {
      const double left = i > 0 ? v[i - 1] : neg_inf;
      const double right = i + 1 < n ? v[i + 1] : neg_inf;
      ok = v[i] >= left && v[i] >= right;
      for (std::size_t j = 0; ok && j < n; ++j)
        if (std::abs(spectrum.grid[j].value - spectrum.grid[i].value) <= options.local_max_halfwidth + kNafTol)
          ok = v[i] >= v[j];
    }
    eligible[i] = ok;
  }

  std::vector<PeakEstimate> peaks;
  while (static_cast<int>(peaks.size()) < options.max_peaks) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i)
      if (eligible[i] && (best == n || v[i] > v[best])) best = i;
    if (best == n) break;

    const double center = spectrum.grid[best].value;
    double naf = center;
    if (options.parabolic_refinement && best > 0 && best + 1 < n) {
      const double l = v[best - 1], c = v[best], r = v[best + 1];
      const double denom = l - 2.0 * c + r;
      if (denom < 0.0) {
        const double delta = std::clamp(0.5 * (l - r) / denom, -0.5, 0.5);
        const double step = delta >= 0 ? spectrum.grid[best + 1].value - center
                                        : center - spectrum.grid[best - 1].value;
        naf = center + delta * step;
      }
      // Keep refined peaks at least one resolution cell apart. The grid point itself is
      // already clear of every earlier peak, so this never moves past it.
      for (const auto& p : peaks) {
        if (center > p.naf.value)
          naf = std::max(naf, p.naf.value + options.resolution);
        else
          naf = std::min(naf, p.naf.value - options.resolution);
      }
    }
    const double range = spectrum.range_m.empty() ? 0.0 : spectrum.range_m[best];
    peaks.push_back({NafAngle(naf), range, v[best] * v[best]});

    for (std::size_t i = 0; i < n; ++i) {
      const double g = spectrum.grid[i].value;
      if (std::abs(g - center) <= options.resolution + kNafTol ||
          std::abs(g - naf) <= options.resolution + kNafTol)
        eligible[i] = false;
    }
  }
  return peaks;
}

std::vector<PeakEstimate> extract_peaks(const std::vector<NafAngle>& grid, const std::vector<double>& power,
                                        double resolution, int max_peaks) {
  AngularSpectrum s;
  s.grid = grid;
  s.values.resize(power.size());
  for (std::size_t i = 0; i < power.size(); ++i) s.values[i] = std::sqrt(std::max(power[i], 0.0));
  PeakSearchOptions opt;
  opt.resolution = resolution;
  opt.max_peaks = max_peaks;
  return extract_peaks(s, opt);
}

AngularSpectrum collapse_map(const Eigen::MatrixXd& amplitude, const std::vector<double>& range_axis,
                             const std::vector<NafAngle>& angle_axis, const DetectionConfig& config) {
  if (amplitude.rows() != static_cast<Eigen::Index>(range_axis.size()) ||
      amplitude.cols() != static_cast<Eigen::Index>(angle_axis.size()))
    throw InputError("map dimensions do not match its axes");
  const auto rows = gate_rows(range_axis, config.rear_wall_gate);

  AngularSpectrum s;
  s.grid = angle_axis;
  s.values.resize(angle_axis.size());
  s.detected.resize(angle_axis.size());
  s.range_m.resize(angle_axis.size());
  std::vector<double> profile(rows.size());
  for (Eigen::Index a = 0; a < amplitude.cols(); ++a) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const double v = amplitude(rows[k], a);
      profile[k] = v > 0.0 ? v * v : 0.0;
      if (v > amplitude(rows[best], a)) best = k;
    }
    const auto mask = ca_cfar(profile, config.cfar);
    const auto col = static_cast<std::size_t>(a);
    s.values[col] = amplitude(rows[best], a);
    s.detected[col] = mask[best];
    s.range_m[col] = range_axis[static_cast<std::size_t>(rows[best])];
  }
  return s;
}

std::vector<PeakEstimate> detect_peaks(const Eigen::MatrixXd& amplitude, const std::vector<double>& range_axis,
                                       const std::vector<NafAngle>& angle_axis, const DetectionConfig& config) {
  return extract_peaks(collapse_map(amplitude, range_axis, angle_axis, config), config.peaks);
}

std::vector<PeakEstimate> detect_peaks(const RangeAngleMap& map, const DetectionConfig& config) {
  map.validate();
  return detect_peaks(Eigen::MatrixXd(map.power.cwiseSqrt()), map.range_axis, map.angle_axis, config);
}

std::vector<PeakEstimate> resolve_peaks(std::vector<PeakEstimate> candidates, double resolution, int max_peaks) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const PeakEstimate& a, const PeakEstimate& b) { return a.power > b.power; });
  std::vector<PeakEstimate> out;
  for (const auto& c : candidates) {
    if (static_cast<int>(out.size()) >= max_peaks) break;
    const bool clear = std::all_of(out.begin(), out.end(), [&](const PeakEstimate& p) {
      return std::abs(p.naf.value - c.naf.value) > resolution + kNafTol;
    });
    if (clear) out.push_back(c);
  }
  return out;
}

}  // namespace beamsweep
