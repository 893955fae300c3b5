#pragma once

#include <iosfwd>
#include <string>

#include "beamsweep/ofdm_scene.hpp"

namespace beamsweep {

// RAMP v1: little-endian {"RAMP", u32 version, u32 n_range, u32 n_angle,
// f64 range_min, f64 range_max, f64 naf_min, f64 naf_max} then n_range*n_angle f64,
// range-major. Axes must be uniform; they are rebuilt from the extents on read.
void write_ramp(std::ostream& out, const RangeAngleMap& map);
void write_ramp(const std::string& path, const RangeAngleMap& map);
RangeAngleMap read_ramp(std::istream& in);
RangeAngleMap read_ramp(const std::string& path);

// Grid CSV: header "range_m,<naf_0>,...", then one line per range bin.
void write_map_csv(std::ostream& out, const RangeAngleMap& map);
void write_map_csv(const std::string& path, const RangeAngleMap& map);

}  // namespace beamsweep
