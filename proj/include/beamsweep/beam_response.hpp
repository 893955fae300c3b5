#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "beamsweep/array_geometry.hpp"

namespace beamsweep {

using cdouble = std::complex<double>;

struct BeamformingWeights {
  std::vector<cdouble> tx;
  std::vector<cdouble> rx;

  // Constant coefficients on both arrays; the coarray sees a triangular taper.
  static BeamformingWeights uniform(const ArrayGeometry& geom);

  // TX and RX weight polynomials whose product is 1 + z + ... + z^(2N-2), so the
  // coarray is flat and the PSF is the plain order-(2N-1) Dirichlet kernel.
  // Requires equal ULAs.
  static BeamformingWeights flat_coarray(const ArrayGeometry& geom);
};

struct Scatterer {
  NafAngle naf;
  double range_m = 1.0;
  cdouble amplitude{1.0, 0.0};
};

struct Psf {
  std::vector<NafAngle> grid;
  std::vector<cdouble> samples;
  int coarray_order = 1;
};

enum class AtomModel {
  matched,      // same weights and taper as the simulated response
  flat_kernel,  // |Dirichlet kernel of the coarray order|, ignores the taper
};

struct Dictionary {
  Eigen::MatrixXd atoms;  // beams x candidates, unit-norm columns
  std::vector<NafAngle> beam_grid;
  std::vector<NafAngle> grid;  // candidate angles, one per column
};

void check_weights(const ArrayGeometry& geom, const BeamformingWeights& weights);

// Coherent monostatic response to a set of scatterers when steering at `steer`.
// Phases are referenced to the coarray centroid.
cdouble beamformed_response(const ArrayGeometry& geom, const BeamformingWeights& weights,
                            const std::vector<Scatterer>& scatterers, NafAngle steer);

// Normalized periodic sinc sin(pi M l) / (M sin(pi l)). Real valued; the removable
// singularities at integer lags evaluate to (-1)^(lag (M-1)).
double dirichlet_kernel(double lag, int order);

Psf point_spread_function(const ArrayGeometry& geom, const BeamformingWeights& weights,
                          const std::vector<NafAngle>& grid);

Dictionary build_dictionary(const ArrayGeometry& geom, const BeamformingWeights& weights,
                            const std::vector<NafAngle>& beam_grid,
                            const std::vector<NafAngle>& candidate_grid,
                            AtomModel model = AtomModel::matched);

}  // namespace beamsweep
