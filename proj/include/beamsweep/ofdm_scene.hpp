#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "beamsweep/beam_response.hpp"

namespace beamsweep {

inline constexpr double kSpeedOfLight = 299792458.0;

struct RadioConfig {
  double carrier_hz = 27.6e9;
  double subcarrier_spacing_hz = 120e3;
  int n_subcarriers = 1584;
  int n_symbols_per_frame = 8;
  double frame_duration_s = 0.010;
  int range_fft_size = 2048;  // zero-padded IFFT length across subcarriers
  int n_range_bins = 42;      // bins kept from the start of the range axis

  void validate() const;
  // Spacing of the zero-padded range axis, c / (2 df L).
  double range_bin_m() const;
  // Native resolution c / (2 N df).
  double range_resolution_m() const;
  std::vector<double> range_axis() const;
};

struct Scene {
  std::vector<Scatterer> scatterers;
};

enum class PhaseMode {
  ideal,         // coherent across beams
  poc_faithful,  // every beam-frame gets a random unit phasor
};

// Subcarriers x symbols.
using FrameCsi = Eigen::MatrixXcd;

struct RangeAngleMap {
  Eigen::MatrixXd power;  // range bins x angle bins
  std::vector<double> range_axis;
  std::vector<NafAngle> angle_axis;

  void validate() const;
};

// Caches the noise-free CSI of one steered beam so repeated frames only pay for noise.
class FrameSynthesizer {
 public:
  FrameSynthesizer(const RadioConfig& config, const Scene& scene, const ArrayGeometry& geom,
                   const BeamformingWeights& weights, NafAngle steer);

  FrameCsi synthesize(double noise_power, std::uint64_t rng_seed,
                      PhaseMode mode = PhaseMode::ideal) const;

  // Zero-Doppler range power profile of one frame: sum over symbols, then one IFFT.
  // Equal to column 0 of range_doppler_periodogram, without building the full CSI.
  std::vector<double> zero_doppler_frame(double noise_power, std::uint64_t rng_seed,
                                         PhaseMode mode = PhaseMode::ideal) const;

  const std::vector<cdouble>& clean_column() const { return clean_; }

 private:
  RadioConfig config_;
  std::vector<cdouble> clean_;  // per subcarrier, identical for every symbol
};

FrameCsi synthesize_csi(const RadioConfig& config, const Scene& scene, const ArrayGeometry& geom,
                        const BeamformingWeights& weights, NafAngle steer, double noise_power,
                        std::uint64_t rng_seed, PhaseMode mode = PhaseMode::ideal);

// |2D DFT|^2: unnormalized inverse transform over subcarriers (zero-padded to fft_size,
// first n_bins kept), forward transform over symbols. Column 0 is zero Doppler.
Eigen::MatrixXd range_doppler_periodogram(const FrameCsi& csi, int fft_size, int n_bins);
Eigen::MatrixXd range_doppler_periodogram(const FrameCsi& csi, const RadioConfig& config);

std::vector<double> zero_doppler_profile(const FrameCsi& csi, const RadioConfig& config);

struct CollapsedValue {
  double value = 0.0;  // power
  double range_m = 0.0;
  int range_bin = 0;
};

// Zero-Doppler column, restricted to [gate.first, gate.second], max intensity bin.
CollapsedValue collapse_to_angle_value(const Eigen::MatrixXd& periodogram,
                                       const std::vector<double>& range_axis,
                                       std::pair<double, double> gate);
CollapsedValue collapse_to_angle_value(const std::vector<double>& profile,
                                       const std::vector<double>& range_axis,
                                       std::pair<double, double> gate);

// Arithmetic mean of the first `count` values.
double average_frames(const std::vector<double>& values, int count = 6);

// Per-entry CSI noise power giving `snr_db` between an on-bin zero-Doppler peak of a
// scatterer with beam response magnitude `peak_response` and the noise floor.
double noise_power_for_snr(const RadioConfig& config, double peak_response, double snr_db);

}  // namespace beamsweep
