#pragma once

#include "beamsweep/array_geometry.hpp"

namespace beamsweep {

struct PeakEstimate {
  NafAngle naf;
  double range_m = 0.0;
  double power = 0.0;  // linear
};

}  // namespace beamsweep
