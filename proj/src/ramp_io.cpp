#include "beamsweep/ramp_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "beamsweep/errors.hpp"

namespace beamsweep {

namespace {

constexpr std::uint32_t kRampVersion = 1;

static_assert(std::endian::native == std::endian::little, "RAMP I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw InputError("RAMP stream truncated");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

std::vector<double> linspace(double lo, double hi, std::uint32_t n) {
  std::vector<double> v(n);
  for (std::uint32_t i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0);
  return v;
}

}  // namespace

void write_ramp(std::ostream& out, const RangeAngleMap& map) {
  map.validate();
  if (map.range_axis.empty() || map.angle_axis.empty()) throw InputError("cannot write an empty map");
  out.write("RAMP", 4);
  put<std::uint32_t>(out, kRampVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(map.range_axis.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(map.angle_axis.size()));
  put<double>(out, map.range_axis.front());
  put<double>(out, map.range_axis.back());
  put<double>(out, map.angle_axis.front().value);
  put<double>(out, map.angle_axis.back().value);
  for (Eigen::Index r = 0; r < map.power.rows(); ++r)
    for (Eigen::Index a = 0; a < map.power.cols(); ++a) put<double>(out, map.power(r, a));
  if (!out) throw InputError("failed writing RAMP stream");
}

void write_ramp(const std::string& path, const RangeAngleMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  write_ramp(out, map);
}

RangeAngleMap read_ramp(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "RAMP", 4) != 0) throw InputError("not a RAMP stream");
  const auto version = get<std::uint32_t>(in);
  if (version != kRampVersion) throw InputError("unsupported RAMP version " + std::to_string(version));
  const auto n_range = get<std::uint32_t>(in);
  const auto n_angle = get<std::uint32_t>(in);
  if (n_range == 0 || n_angle == 0) throw InputError("RAMP grid is empty");
  const double r0 = get<double>(in), r1 = get<double>(in);
  const double a0 = get<double>(in), a1 = get<double>(in);
  RangeAngleMap map;
  map.range_axis = linspace(r0, r1, n_range);
  for (double a : linspace(a0, a1, n_angle)) map.angle_axis.emplace_back(a);
  map.power.resize(n_range, n_angle);
  for (std::uint32_t r = 0; r < n_range; ++r)
    for (std::uint32_t a = 0; a < n_angle; ++a) map.power(r, a) = get<double>(in);
  map.validate();
  return map;
}

RangeAngleMap read_ramp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return read_ramp(in);
}

void write_map_csv(std::ostream& out, const RangeAngleMap& map) {
  out << std::setprecision(17) << "range_m";
  for (const auto& a : map.angle_axis) out << ',' << a.value;
  out << '\n';
  for (Eigen::Index r = 0; r < map.power.rows(); ++r) {
    out << map.range_axis[static_cast<std::size_t>(r)];
    for (Eigen::Index a = 0; a < map.power.cols(); ++a) out << ',' << map.power(r, a);
    out << '\n';
  }
}

void write_map_csv(const std::string& path, const RangeAngleMap& map) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  write_map_csv(out, map);
}

}  // namespace beamsweep
