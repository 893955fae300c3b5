#include "beamsweep/scenario.hpp"

#include <cmath>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "beamsweep/errors.hpp"
#include "beamsweep/random.hpp"

namespace beamsweep {

namespace {

struct Spacing {
  const char* label;
  double meters;
  double naf;
};

constexpr Spacing kSpacings[] = {
    {"far", 7.79, 0.209},
    {"mid", 6.25, 0.168},
    {"near", 4.70, 0.126},
    {"resolution-limited", 3.14, 0.084},
};

double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

}  // namespace

std::string to_string(ReflectorKind kind) {
  return kind == ReflectorKind::octahedral ? "octahedral" : "wall";
}

ReflectorKind reflector_kind_from_string(const std::string& s) {
  if (s == "octahedral") return ReflectorKind::octahedral;
  if (s == "wall") return ReflectorKind::wall;
  throw ConfigError("unknown reflector kind '" + s + "'");
}

void Scenario::validate() const {
  if (!(spacing_m > 0)) throw ConfigError("scenario " + name + ": spacing must be positive");
  if (!(range_m > 0)) throw ConfigError("scenario " + name + ": range must be positive");
  for (const auto& t : target_nafs)
    if (std::abs(t.value) > 0.5) throw ConfigError("scenario " + name + ": target NAF outside [-0.5, 0.5]");
  if (rear_wall.enabled && (rear_wall.n_scatterers < 1 || !(rear_wall.range_m > 0)))
    throw ConfigError("scenario " + name + ": invalid rear wall");
}

std::vector<Scenario> scenario_catalog(const CatalogOptions& options) {
  std::vector<Scenario> out;
  for (ReflectorKind kind : {ReflectorKind::octahedral, ReflectorKind::wall}) {
    const double amp_db =
        kind == ReflectorKind::octahedral ? options.octahedral_amplitude_db : options.wall_amplitude_db;
    for (const auto& sp : kSpacings) {
      Scenario s;
      s.kind = kind;
      s.name = to_string(kind) + "-" + sp.label;
      s.spacing_label = sp.label;
      s.spacing_m = sp.meters;
      s.range_m = options.range_m;
      s.target_nafs = {NafAngle(-sp.naf / 2.0), NafAngle(sp.naf / 2.0)};
      s.amplitude_db = amp_db;
      s.rear_wall = options.rear_wall;
      s.elevation_deg = options.elevation_deg;
      s.snr_db = options.reference_snr_db + (amp_db - options.octahedral_amplitude_db);
      s.validate();
      out.push_back(std::move(s));
    }
  }
  return out;
}

const Scenario& find_scenario(const std::vector<Scenario>& catalog, const std::string& name) {
  for (const auto& s : catalog)
    if (s.name == name) return s;
  throw ConfigError("unknown scenario '" + name + "'");
}

Scene build_scene(const Scenario& scenario, std::uint64_t seed) {
  scenario.validate();
  boost::random::mt19937_64 gen(derive_seed(seed, 0x5ce7e));
  boost::random::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  Scene scene;
  const double amp = db_to_amplitude(scenario.amplitude_db);
  for (const auto& t : scenario.target_nafs)
    scene.scatterers.push_back({t, scenario.range_m, std::polar(amp, phase(gen))});
  const auto& w = scenario.rear_wall;
  if (w.enabled) {
    const double each = db_to_amplitude(w.amplitude_db) / std::sqrt(static_cast<double>(w.n_scatterers));
    for (int i = 0; i < w.n_scatterers; ++i) {
      const double naf = w.n_scatterers == 1
                             ? 0.0
                             : -w.naf_extent / 2.0 + w.naf_extent * i / (w.n_scatterers - 1.0);
      scene.scatterers.push_back({NafAngle(naf), w.range_m, std::polar(each, phase(gen))});
    }
  }
  return scene;
}

double scenario_noise_power(const Scenario& scenario, const RadioConfig& radio, const ArrayGeometry& geom,
                            const BeamformingWeights& weights) {
  const std::vector<Scatterer> one{{NafAngle(0.0), scenario.range_m, db_to_amplitude(scenario.amplitude_db)}};
  const double peak = std::abs(beamformed_response(geom, weights, one, NafAngle(0.0)));
  return noise_power_for_snr(radio, peak, scenario.snr_db);
}

}  // namespace beamsweep
