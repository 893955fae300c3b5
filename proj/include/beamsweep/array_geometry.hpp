#pragma once

#include <array>
#include <compare>
#include <vector>

namespace beamsweep {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Scan direction as an (azimuth, elevation) pair in radians, both in (-pi/2, pi/2).
class Direction {
 public:
  Direction(double azimuth_rad, double elevation_rad);
  static Direction from_degrees(double azimuth_deg, double elevation_deg);

  double azimuth() const { return azimuth_; }
  double elevation() const { return elevation_; }

 private:
  double azimuth_;
  double elevation_;
};

/// Normalized angular frequency l = (d/lambda) sin(theta) cos(phi).
struct NafAngle {
  double value = 0.0;

  constexpr NafAngle() = default;
  constexpr explicit NafAngle(double v) : value(v) {}

  friend constexpr auto operator<=>(const NafAngle&, const NafAngle&) = default;
};

/// Element position on the array aperture line, in multiples of the element spacing d.
struct AalPosition {
  int x = 0;
  int z = 0;

  friend constexpr auto operator<=>(const AalPosition&, const AalPosition&) = default;
};

/// Monostatic TX/RX layout. Only the horizontal cut is modeled; every element has z = 0.
class ArrayGeometry {
 public:
  // Two co-located ULAs with n_tx and n_rx elements at positions 0..n-1.
  static ArrayGeometry uniform_linear(int n_tx, int n_rx, double spacing_wavelengths = 0.5);

  int n_tx() const { return static_cast<int>(tx_.size()); }
  int n_rx() const { return static_cast<int>(rx_.size()); }
  double spacing_wavelengths() const { return spacing_wavelengths_; }
  const std::vector<AalPosition>& tx_positions() const { return tx_; }
  const std::vector<AalPosition>& rx_positions() const { return rx_; }

  // Horizontal centroid of the sum coarray. Steering phases are referenced to it so
  // the coarray spectrum is centered and the response is a real-centered trig polynomial.
  double phase_center_x() const;

  // Number of distinct horizontal coarray positions (2N-1 for equal ULAs).
  int coarray_order() const;

 private:
  ArrayGeometry(std::vector<AalPosition> tx, std::vector<AalPosition> rx, double spacing);

  std::vector<AalPosition> tx_;
  std::vector<AalPosition> rx_;
  double spacing_wavelengths_;
};

struct Coarray {
  std::vector<AalPosition> virtual_positions;  // sorted, distinct
  std::vector<int> multiplicities;             // parallel to virtual_positions
};

// u(theta, phi) = [cos(phi) sin(theta), sin(phi)]
std::array<double, 2> direction_vector(const Direction& dir);

NafAngle naf_of_direction(const Direction& dir, double spacing_wavelengths);

// All pairwise sums of TX and RX positions, deduplicated on the integer lattice.
Coarray sum_coarray(const ArrayGeometry& geom);

// rho = 1 / (2 n_1d - 1)
double naf_resolution(int n_1d);

}  // namespace beamsweep
