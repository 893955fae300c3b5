#include "beamsweep/array_geometry.hpp"

#include <cmath>
#include <map>
#include <string>

#include "beamsweep/errors.hpp"

namespace beamsweep {

Direction::Direction(double azimuth_rad, double elevation_rad)
    : azimuth_(azimuth_rad), elevation_(elevation_rad) {
  const double half_pi = kPi / 2.0;
  if (!(std::abs(azimuth_rad) < half_pi))
    throw ConfigError("azimuth must lie in (-pi/2, pi/2), got " + std::to_string(azimuth_rad));
  if (!(std::abs(elevation_rad) < half_pi))
    throw ConfigError("elevation must lie in (-pi/2, pi/2), got " + std::to_string(elevation_rad));
}

Direction Direction::from_degrees(double azimuth_deg, double elevation_deg) {
  return Direction(deg_to_rad(azimuth_deg), deg_to_rad(elevation_deg));
}

ArrayGeometry::ArrayGeometry(std::vector<AalPosition> tx, std::vector<AalPosition> rx,
                             double spacing)
    : tx_(std::move(tx)), rx_(std::move(rx)), spacing_wavelengths_(spacing) {}

ArrayGeometry ArrayGeometry::uniform_linear(int n_tx, int n_rx, double spacing_wavelengths) {
  if (n_tx < 1 || n_rx < 1) throw ConfigError("array needs at least one TX and one RX element");
  if (!(spacing_wavelengths > 0.0) || spacing_wavelengths > 0.5)
    throw ConfigError("element spacing must be in (0, 0.5] wavelengths");
  std::vector<AalPosition> tx(n_tx), rx(n_rx);
  for (int n = 0; n < n_tx; ++n) tx[n] = {n, 0};
  for (int m = 0; m < n_rx; ++m) rx[m] = {m, 0};
  return ArrayGeometry(std::move(tx), std::move(rx), spacing_wavelengths);
}

double ArrayGeometry::phase_center_x() const {
  double sx = 0.0;
  for (const auto& p : tx_) sx += p.x;
  double rx = 0.0;
  for (const auto& p : rx_) rx += p.x;
  return sx / static_cast<double>(tx_.size()) + rx / static_cast<double>(rx_.size());
}

int ArrayGeometry::coarray_order() const {
  return static_cast<int>(sum_coarray(*this).virtual_positions.size());
}

std::array<double, 2> direction_vector(const Direction& dir) {
  return {std::cos(dir.elevation()) * std::sin(dir.azimuth()), std::sin(dir.elevation())};
}

NafAngle naf_of_direction(const Direction& dir, double spacing_wavelengths) {
  if (!(spacing_wavelengths > 0.0)) throw ConfigError("spacing must be positive");
  return NafAngle(spacing_wavelengths * std::sin(dir.azimuth()) * std::cos(dir.elevation()));
}

Coarray sum_coarray(const ArrayGeometry& geom) {
  std::map<AalPosition, int> counts;
  for (const auto& t : geom.tx_positions())
    for (const auto& r : geom.rx_positions()) ++counts[{t.x + r.x, t.z + r.z}];
  Coarray out;
  out.virtual_positions.reserve(counts.size());
  out.multiplicities.reserve(counts.size());
  for (const auto& [pos, count] : counts) {
    out.virtual_positions.push_back(pos);
    out.multiplicities.push_back(count);
  }
  return out;
}

double naf_resolution(int n_1d) {
  if (n_1d < 1) throw ConfigError("naf_resolution needs n_1d >= 1");
  return 1.0 / (2.0 * n_1d - 1.0);
}

}  // namespace beamsweep
