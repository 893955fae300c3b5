#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "beamsweep/ofdm_scene.hpp"

namespace beamsweep {

enum class ReflectorKind { octahedral, wall };

std::string to_string(ReflectorKind kind);
ReflectorKind reflector_kind_from_string(const std::string& s);

struct RearWall {
  bool enabled = true;
  double range_m = 22.8;
  double amplitude_db = 5.0;  // total power of the line, relative to the 0 dB reference
  double naf_extent = 0.5;     // centered on boresight
  int n_scatterers = 17;
};

struct Scenario {
  std::string name;
  ReflectorKind kind = ReflectorKind::octahedral;
  std::string spacing_label;  // far, mid, near, resolution-limited
  double spacing_m = 0.0;
  double range_m = 18.0;
  std::array<NafAngle, 2> target_nafs{};
  double amplitude_db = 0.0;
  RearWall rear_wall;
  double elevation_deg = -3.9;
  double snr_db = 20.0;  // on-bin zero-Doppler peak SNR of one target at its own beam

  void validate() const;
  double separation() const { return target_nafs[1].value - target_nafs[0].value; }
};

struct CatalogOptions {
  double range_m = 18.0;
  double elevation_deg = -3.9;
  double octahedral_amplitude_db = 0.0;
  double wall_amplitude_db = 15.0;
  // Noise floor is common to both kinds: the stronger wall reflector sees a higher SNR.
  double reference_snr_db = 20.0;
  RearWall rear_wall;
};

// 2 reflector kinds x {far, mid, near, resolution-limited}, targets symmetric about
// boresight at the stated NAF separations.
std::vector<Scenario> scenario_catalog(const CatalogOptions& options = {});

const Scenario& find_scenario(const std::vector<Scenario>& catalog, const std::string& name);

// Targets plus rear-wall line with phases drawn from `seed`.
Scene build_scene(const Scenario& scenario, std::uint64_t seed);

// Per-entry CSI noise power for the scenario's SNR definition.
double scenario_noise_power(const Scenario& scenario, const RadioConfig& radio, const ArrayGeometry& geom,
                            const BeamformingWeights& weights);

}  // namespace beamsweep
