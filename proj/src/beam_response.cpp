#include "beamsweep/beam_response.hpp"

#include <cmath>

#include "beamsweep/errors.hpp"

namespace beamsweep {

namespace {

// Coefficients of prod_k (z - r_k), lowest power first.
std::vector<cdouble> poly_from_roots(const std::vector<cdouble>& roots) {
  std::vector<cdouble> c{1.0};
  for (const auto& r : roots) {
    std::vector<cdouble> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

cdouble array_factor(const std::vector<AalPosition>& pos, const std::vector<cdouble>& w, double u) {
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    acc += w[i] * std::polar(1.0, 2.0 * kPi * u * pos[i].x);
  return acc;
}

}  // namespace

BeamformingWeights BeamformingWeights::uniform(const ArrayGeometry& geom) {
  return {std::vector<cdouble>(geom.n_tx(), 1.0), std::vector<cdouble>(geom.n_rx(), 1.0)};
}

BeamformingWeights BeamformingWeights::flat_coarray(const ArrayGeometry& geom) {
  const int n = geom.n_tx();
  if (geom.n_rx() != n) throw ConfigError("flat coarray weights need equal TX and RX sizes");
  const int order = 2 * n - 1;
  std::vector<cdouble> tx_roots, rx_roots;
  for (int k = 1; k < order; ++k) {
    cdouble root = std::polar(1.0, 2.0 * kPi * k / order);
    (k < n ? tx_roots : rx_roots).push_back(root);
  }
  return {poly_from_roots(tx_roots), poly_from_roots(rx_roots)};
}

void check_weights(const ArrayGeometry& geom, const BeamformingWeights& weights) {
  if (static_cast<int>(weights.tx.size()) != geom.n_tx() ||
      static_cast<int>(weights.rx.size()) != geom.n_rx())
    throw ConfigError("beamforming weight lengths do not match the array geometry");
}

cdouble beamformed_response(const ArrayGeometry& geom, const BeamformingWeights& weights,
                            const std::vector<Scatterer>& scatterers, NafAngle steer) {
  check_weights(geom, weights);
  const double c = geom.phase_center_x();
  cdouble total = 0.0;
  for (const auto& s : scatterers) {
    const double u = steer.value - s.naf.value;
    // The double sum over (n, m) factors into a TX sum times an RX sum.
    cdouble t = array_factor(geom.tx_positions(), weights.tx, u);
    cdouble r = array_factor(geom.rx_positions(), weights.rx, u);
    total += s.amplitude * t * r * std::polar(1.0, -2.0 * kPi * u * c);
  }
  return total;
}

double dirichlet_kernel(double lag, int order) {
  if (order < 1) throw ConfigError("dirichlet kernel order must be >= 1");
  const double k = std::nearbyint(lag);
  const double delta = lag - k;
  const bool odd = (static_cast<long long>(k) * (order - 1)) % 2 != 0;
  const double sign = odd ? -1.0 : 1.0;
  if (delta == 0.0) return sign;
  return sign * std::sin(kPi * order * delta) / (order * std::sin(kPi * delta));
}

Psf point_spread_function(const ArrayGeometry& geom, const BeamformingWeights& weights,
                          const std::vector<NafAngle>& grid) {
  Psf psf;
  psf.grid = grid;
  psf.coarray_order = geom.coarray_order();
  const std::vector<Scatterer> unit{Scatterer{NafAngle(0.0), 1.0, 1.0}};
  psf.samples.reserve(grid.size());
  for (const auto& g : grid) psf.samples.push_back(beamformed_response(geom, weights, unit, g));
  return psf;
}

Dictionary build_dictionary(const ArrayGeometry& geom, const BeamformingWeights& weights,
                            const std::vector<NafAngle>& beam_grid,
                            const std::vector<NafAngle>& candidate_grid, AtomModel model) {
  if (beam_grid.empty() || candidate_grid.empty())
    throw ConfigError("dictionary needs nonempty beam and candidate grids");
  check_weights(geom, weights);
  Dictionary d;
  d.beam_grid = beam_grid;
  d.grid = candidate_grid;
  d.atoms.resize(static_cast<Eigen::Index>(beam_grid.size()),
                 static_cast<Eigen::Index>(candidate_grid.size()));
  const int order = geom.coarray_order();
  for (std::size_t j = 0; j < candidate_grid.size(); ++j) {
    const std::vector<Scatterer> unit{Scatterer{candidate_grid[j], 1.0, 1.0}};
    for (std::size_t i = 0; i < beam_grid.size(); ++i) {
      double v = model == AtomModel::matched
                     ? std::abs(beamformed_response(geom, weights, unit, beam_grid[i]))
                     : std::abs(dirichlet_kernel(beam_grid[i].value - candidate_grid[j].value, order));
      d.atoms(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
    auto col = d.atoms.col(static_cast<Eigen::Index>(j));
    const double norm = col.norm();
    if (!(norm > 0.0)) throw ConfigError("dictionary atom has zero response on every beam");
    col /= norm;
  }
  return d;
}

}  // namespace beamsweep
