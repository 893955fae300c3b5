#include "beamsweep/ofdm_scene.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <fftw3.h>

#include "beamsweep/errors.hpp"

namespace beamsweep {

namespace {

// In-place 1D complex DFT. sign = FFTW_BACKWARD for the unnormalized inverse.
void dft_inplace(std::vector<cdouble>& buf, int sign) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  const int n = static_cast<int>(buf.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find({n, sign});
    if (it == plans.end()) {
      fftw_complex* tmp = fftw_alloc_complex(static_cast<std::size_t>(n));
      plan = fftw_plan_dft_1d(n, tmp, tmp, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
      fftw_free(tmp);
      plans.emplace(std::make_pair(n, sign), plan);
    } else {
      plan = it->second;
    }
  }
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plan, p, p);
}

struct NoiseSource {
  boost::random::mt19937_64 gen;
  boost::random::normal_distribution<double> normal;

  NoiseSource(std::uint64_t seed, double noise_power)
      : gen(seed), normal(0.0, std::sqrt(noise_power / 2.0)) {}

  cdouble phasor(PhaseMode mode) {
    if (mode != PhaseMode::poc_faithful) return 1.0;
    boost::random::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    return std::polar(1.0, u(gen));
  }
  cdouble sample() {
    const double re = normal(gen);
    const double im = normal(gen);
    return {re, im};
  }
};

}  // namespace

void RadioConfig::validate() const {
  if (!(carrier_hz > 0) || !(subcarrier_spacing_hz > 0) || !(frame_duration_s > 0))
    throw ConfigError("radio frequencies and frame duration must be positive");
  if (n_subcarriers < 1 || n_symbols_per_frame < 1)
    throw ConfigError("radio needs at least one subcarrier and one symbol");
  if (range_fft_size < n_subcarriers)
    throw ConfigError("range FFT size must be at least the subcarrier count");
  if (n_range_bins < 1 || n_range_bins > range_fft_size)
    throw ConfigError("range bin count must be in [1, range_fft_size]");
}

double RadioConfig::range_bin_m() const {
  return kSpeedOfLight / (2.0 * subcarrier_spacing_hz * range_fft_size);
}

double RadioConfig::range_resolution_m() const {
  return kSpeedOfLight / (2.0 * subcarrier_spacing_hz * n_subcarriers);
}

std::vector<double> RadioConfig::range_axis() const {
  std::vector<double> axis(static_cast<std::size_t>(n_range_bins));
  const double step = range_bin_m();
  for (int k = 0; k < n_range_bins; ++k) axis[k] = k * step;
  return axis;
}

void RangeAngleMap::validate() const {
  if (power.rows() != static_cast<Eigen::Index>(range_axis.size()) ||
      power.cols() != static_cast<Eigen::Index>(angle_axis.size()))
    throw ContractViolation("range-angle map axes do not match its power matrix");
  if ((power.array() < 0.0).any()) throw ContractViolation("range-angle map has negative power");
  for (std::size_t i = 1; i < range_axis.size(); ++i)
    if (!(range_axis[i] > range_axis[i - 1]))
      throw ContractViolation("range axis must be strictly increasing");
  for (std::size_t i = 1; i < angle_axis.size(); ++i)
    if (!(angle_axis[i].value > angle_axis[i - 1].value))
      throw ContractViolation("angle axis must be strictly increasing");
}

FrameSynthesizer::FrameSynthesizer(const RadioConfig& config, const Scene& scene,
                                   const ArrayGeometry& geom, const BeamformingWeights& weights,
                                   NafAngle steer)
    : config_(config), clean_(static_cast<std::size_t>(config.n_subcarriers), 0.0) {
  config_.validate();
  for (const auto& s : scene.scatterers) {
    if (!(s.range_m > 0)) throw ConfigError("scatterer range must be positive");
    const cdouble alpha = beamformed_response(geom, weights, {s}, steer);
    const double slope = -2.0 * kPi * config_.subcarrier_spacing_hz * 2.0 * s.range_m / kSpeedOfLight;
    for (int n = 0; n < config_.n_subcarriers; ++n)
      clean_[n] += alpha * std::polar(1.0, std::fmod(slope * n, 2.0 * kPi));
  }
}

FrameCsi FrameSynthesizer::synthesize(double noise_power, std::uint64_t rng_seed,
                                      PhaseMode mode) const {
  if (noise_power < 0) throw ConfigError("noise power must be nonnegative");
  const int ns = config_.n_subcarriers;
  const int nsym = config_.n_symbols_per_frame;
  FrameCsi csi(ns, nsym);
  NoiseSource src(rng_seed, noise_power);
  const cdouble ph = src.phasor(mode);
  for (int m = 0; m < nsym; ++m)
    for (int n = 0; n < ns; ++n) csi(n, m) = clean_[n] * ph;
  if (noise_power > 0)
    for (int m = 0; m < nsym; ++m)
      for (int n = 0; n < ns; ++n) csi(n, m) += src.sample();
  return csi;
}

std::vector<double> FrameSynthesizer::zero_doppler_frame(double noise_power, std::uint64_t rng_seed,
                                                         PhaseMode mode) const {
  if (noise_power < 0) throw ConfigError("noise power must be nonnegative");
  const int ns = config_.n_subcarriers;
  const int nsym = config_.n_symbols_per_frame;
  std::vector<cdouble> buf(static_cast<std::size_t>(config_.range_fft_size), 0.0);
  NoiseSource src(rng_seed, noise_power);
  const cdouble ph = src.phasor(mode);
  for (int n = 0; n < ns; ++n) buf[n] = clean_[n] * ph * static_cast<double>(nsym);
  if (noise_power > 0)
    for (int m = 0; m < nsym; ++m)
      for (int n = 0; n < ns; ++n) buf[n] += src.sample();
  dft_inplace(buf, FFTW_BACKWARD);
  std::vector<double> out(static_cast<std::size_t>(config_.n_range_bins));
  for (int k = 0; k < config_.n_range_bins; ++k) out[k] = std::norm(buf[k]);
  return out;
}

FrameCsi synthesize_csi(const RadioConfig& config, const Scene& scene, const ArrayGeometry& geom,
                        const BeamformingWeights& weights, NafAngle steer, double noise_power,
                        std::uint64_t rng_seed, PhaseMode mode) {
  return FrameSynthesizer(config, scene, geom, weights, steer).synthesize(noise_power, rng_seed, mode);
}

Eigen::MatrixXd range_doppler_periodogram(const FrameCsi& csi, int fft_size, int n_bins) {
  const int ns = static_cast<int>(csi.rows());
  const int nsym = static_cast<int>(csi.cols());
  if (ns < 1 || nsym < 1) throw InputError("CSI matrix is empty");
  if (fft_size < ns) throw ConfigError("range FFT size smaller than subcarrier count");
  if (n_bins < 1 || n_bins > fft_size) throw ConfigError("range bin count out of range");

  Eigen::MatrixXcd range_sym(n_bins, nsym);
  std::vector<cdouble> buf(static_cast<std::size_t>(fft_size));
  for (int m = 0; m < nsym; ++m) {
    std::fill(buf.begin(), buf.end(), cdouble(0.0));
    for (int n = 0; n < ns; ++n) buf[n] = csi(n, m);
    dft_inplace(buf, FFTW_BACKWARD);
    for (int k = 0; k < n_bins; ++k) range_sym(k, m) = buf[k];
  }
  Eigen::MatrixXd power(n_bins, nsym);
  std::vector<cdouble> row(static_cast<std::size_t>(nsym));
  for (int k = 0; k < n_bins; ++k) {
    for (int m = 0; m < nsym; ++m) row[m] = range_sym(k, m);
    dft_inplace(row, FFTW_FORWARD);
    for (int m = 0; m < nsym; ++m) power(k, m) = std::norm(row[m]);
  }
  return power;
}

Eigen::MatrixXd range_doppler_periodogram(const FrameCsi& csi, const RadioConfig& config) {
  return range_doppler_periodogram(csi, config.range_fft_size, config.n_range_bins);
}

std::vector<double> zero_doppler_profile(const FrameCsi& csi, const RadioConfig& config) {
  config.validate();
  if (csi.rows() != config.n_subcarriers) throw InputError("CSI rows do not match subcarrier count");
  std::vector<cdouble> buf(static_cast<std::size_t>(config.range_fft_size), 0.0);
  for (Eigen::Index n = 0; n < csi.rows(); ++n) buf[n] = csi.row(n).sum();
  dft_inplace(buf, FFTW_BACKWARD);
  std::vector<double> out(static_cast<std::size_t>(config.n_range_bins));
  for (int k = 0; k < config.n_range_bins; ++k) out[k] = std::norm(buf[k]);
  return out;
}

CollapsedValue collapse_to_angle_value(const std::vector<double>& profile,
                                       const std::vector<double>& range_axis,
                                       std::pair<double, double> gate) {
  if (profile.size() != range_axis.size()) throw InputError("profile and range axis differ in length");
  CollapsedValue best;
  bool found = false;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    if (range_axis[k] < gate.first || range_axis[k] > gate.second) continue;
    if (!found || profile[k] > best.value) {
      best = {profile[k], range_axis[k], static_cast<int>(k)};
      found = true;
    }
  }
  if (!found) throw ConfigError("range gate selects no bins");
  return best;
}

CollapsedValue collapse_to_angle_value(const Eigen::MatrixXd& periodogram,
                                       const std::vector<double>& range_axis,
                                       std::pair<double, double> gate) {
  if (periodogram.cols() < 1) throw InputError("periodogram has no Doppler bins");
  std::vector<double> col(periodogram.col(0).data(), periodogram.col(0).data() + periodogram.rows());
  return collapse_to_angle_value(col, range_axis, gate);
}

double average_frames(const std::vector<double>& values, int count) {
  if (count < 1) throw ConfigError("frame average count must be >= 1");
  if (static_cast<int>(values.size()) < count)
    throw InputError("need " + std::to_string(count) + " frames, got " + std::to_string(values.size()));
  double acc = 0.0;
  for (int i = 0; i < count; ++i) acc += values[i];
  return acc / count;
}

double noise_power_for_snr(const RadioConfig& config, double peak_response, double snr_db) {
  const double cells = static_cast<double>(config.n_subcarriers) * config.n_symbols_per_frame;
  return peak_response * peak_response * cells / std::pow(10.0, snr_db / 10.0);
}

}  // namespace beamsweep
