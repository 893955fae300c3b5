#include "beamsweep/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>

#include "beamsweep/errors.hpp"

namespace beamsweep {

namespace {

using nlohmann::json;

class Section {
 public:
  Section(const json& root, const std::string& name) : name_(name) {
    if (root.contains(name)) {
      node_ = &root.at(name);
      if (!node_->is_object()) throw ConfigError("config section '" + name + "' must be an object");
    }
  }
  Section(const json* node, std::string name) : name_(std::move(name)), node_(node) {}

  template <typename T>
  void read(const char* key, T& target) {
    seen_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    try {
      target = node_->at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config " + name_ + "." + key + ": " + e.what());
    }
  }

  bool has(const char* key) const { return node_ && node_->contains(key); }
  const json& at(const char* key) {
    seen_.insert(key);
    return node_->at(key);
  }
  void mark(const char* key) { seen_.insert(key); }

  void finish() const {
    if (!node_) return;
    for (const auto& [k, v] : node_->items())
      if (!seen_.count(k)) throw ConfigError("unknown config key " + name_ + "." + k);
  }

 private:
  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> seen_;
};

}  // namespace

std::vector<std::uint64_t> RunConfig::seeds() const {
  std::vector<std::uint64_t> s;
  for (int i = 0; i < n_seeds; ++i) s.push_back(master_seed + static_cast<std::uint64_t>(i));
  return s;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  static const std::set<std::string> sections{"radio", "array", "sweep", "scenario", "omp", "cfar", "detection", "seeds"};
  for (const auto& [k, v] : j.items())
    if (!sections.count(k)) throw ConfigError("unknown config section '" + k + "'");

  RunConfig c;
  auto& p = c.pipeline;
  {
    Section s(j, "radio");
    s.read("carrier_hz", p.radio.carrier_hz);
    s.read("subcarrier_spacing_hz", p.radio.subcarrier_spacing_hz);
    s.read("n_subcarriers", p.radio.n_subcarriers);
    s.read("n_symbols_per_frame", p.radio.n_symbols_per_frame);
    s.read("frame_duration_s", p.radio.frame_duration_s);
    s.read("range_fft_size", p.radio.range_fft_size);
    s.read("n_range_bins", p.radio.n_range_bins);
    s.finish();
  }
  {
    Section s(j, "array");
    s.read("n_1d", p.n_1d);
    s.read("spacing_wavelengths", p.spacing_wavelengths);
    std::string weights = p.flat_coarray_weights ? "flat_coarray" : "uniform";
    s.read("weights", weights);
    if (weights != "uniform" && weights != "flat_coarray")
      throw ConfigError("array.weights must be 'uniform' or 'flat_coarray'");
    p.flat_coarray_weights = weights == "flat_coarray";
    s.finish();
  }
  {
    Section s(j, "sweep");
    s.read("limit_deg", p.sweep_limit_deg);
    s.read("oversampling_factor", p.oversampling_factor);
    s.read("frames_per_beam", p.frames_per_beam);
    s.read("averaged_frames", p.averaged_frames);
    std::string mode = p.phase_mode == PhaseMode::ideal ? "ideal" : "poc_faithful";
    s.read("phase_mode", mode);
    if (mode != "ideal" && mode != "poc_faithful") throw ConfigError("sweep.phase_mode must be 'ideal' or 'poc_faithful'");
    p.phase_mode = mode == "ideal" ? PhaseMode::ideal : PhaseMode::poc_faithful;
    s.finish();
  }
  {
    Section s(j, "scenario");
    auto& o = c.catalog;
    s.read("range_m", o.range_m);
    s.read("elevation_deg", o.elevation_deg);
    s.read("octahedral_amplitude_db", o.octahedral_amplitude_db);
    s.read("wall_amplitude_db", o.wall_amplitude_db);
    s.read("reference_snr_db", o.reference_snr_db);
    if (s.has("rear_wall")) {
      const json& rw = s.at("rear_wall");
      if (!rw.is_object()) throw ConfigError("scenario.rear_wall must be an object");
      Section w(&rw, "scenario.rear_wall");
      w.read("enabled", o.rear_wall.enabled);
      w.read("range_m", o.rear_wall.range_m);
      w.read("amplitude_db", o.rear_wall.amplitude_db);
      w.read("naf_extent", o.rear_wall.naf_extent);
      w.read("n_scatterers", o.rear_wall.n_scatterers);
      w.finish();
    }
    s.finish();
  }
  {
    Section s(j, "omp");
    s.read("k_max", p.omp.k_max);
    s.read("epsilon", p.omp.epsilon);
    std::string dict = p.atom_model == AtomModel::matched ? "matched" : "flat_kernel";
    s.read("dictionary", dict);
    if (dict != "matched" && dict != "flat_kernel") throw ConfigError("omp.dictionary must be 'matched' or 'flat_kernel'");
    p.atom_model = dict == "matched" ? AtomModel::matched : AtomModel::flat_kernel;
    s.finish();
  }
  {
    Section s(j, "cfar");
    s.read("p_fa", p.detection.cfar.p_fa);
    s.read("n_training", p.detection.cfar.n_training);
    s.read("n_guard", p.detection.cfar.n_guard);
    s.finish();
  }
  p.detection.peaks.resolution = naf_resolution(p.n_1d);
  {
    Section s(j, "detection");
    if (s.has("rear_wall_gate")) {
      const json& g = s.at("rear_wall_gate");
      if (!g.is_array() || g.size() != 2 || !g[0].is_number())
        throw ConfigError("detection.rear_wall_gate must be [min_m, max_m or null]");
      p.detection.rear_wall_gate.first = g[0].get<double>();
      p.detection.rear_wall_gate.second =
          g[1].is_null() ? std::numeric_limits<double>::infinity() : g[1].get<double>();
    }
    if (s.has("resolution") && !s.at("resolution").is_null()) s.read("resolution", p.detection.peaks.resolution);
    s.mark("resolution");
    s.read("max_peaks", p.detection.peaks.max_peaks);
    s.read("parabolic_refinement", p.detection.peaks.parabolic_refinement);
    s.read("require_local_max", p.detection.peaks.require_local_max);
    s.read("local_max_halfwidth", p.detection.peaks.local_max_halfwidth);
    s.finish();
  }
  {
    Section s(j, "seeds");
    s.read("master", c.master_seed);
    s.read("count", c.n_seeds);
    s.read("threads", c.threads);
    s.finish();
    if (c.n_seeds < 1) throw ConfigError("seeds.count must be >= 1");
  }
  p.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

nlohmann::ordered_json pipeline_to_json(const PipelineConfig& p) {
  nlohmann::ordered_json j;
  j["radio"] = {{"carrier_hz", p.radio.carrier_hz},
                {"subcarrier_spacing_hz", p.radio.subcarrier_spacing_hz},
                {"n_subcarriers", p.radio.n_subcarriers},
                {"n_symbols_per_frame", p.radio.n_symbols_per_frame},
                {"frame_duration_s", p.radio.frame_duration_s},
                {"range_fft_size", p.radio.range_fft_size},
                {"n_range_bins", p.radio.n_range_bins}};
  j["array"] = {{"n_1d", p.n_1d},
                {"spacing_wavelengths", p.spacing_wavelengths},
                {"weights", p.flat_coarray_weights ? "flat_coarray" : "uniform"}};
  j["sweep"] = {{"limit_deg", p.sweep_limit_deg},
                {"oversampling_factor", p.oversampling_factor},
                {"frames_per_beam", p.frames_per_beam},
                {"averaged_frames", p.averaged_frames},
                {"phase_mode", p.phase_mode == PhaseMode::ideal ? "ideal" : "poc_faithful"}};
  j["omp"] = {{"k_max", p.omp.k_max},
              {"epsilon", p.omp.epsilon},
              {"dictionary", p.atom_model == AtomModel::matched ? "matched" : "flat_kernel"}};
  j["cfar"] = {{"p_fa", p.detection.cfar.p_fa},
               {"n_training", p.detection.cfar.n_training},
               {"n_guard", p.detection.cfar.n_guard}};
  nlohmann::ordered_json gate = nlohmann::ordered_json::array();
  gate.push_back(p.detection.rear_wall_gate.first);
  if (std::isinf(p.detection.rear_wall_gate.second))
    gate.push_back(nullptr);
  else
    gate.push_back(p.detection.rear_wall_gate.second);
  j["detection"] = {{"rear_wall_gate", gate},
                    {"resolution", p.detection.peaks.resolution},
                    {"max_peaks", p.detection.peaks.max_peaks},
                    {"parabolic_refinement", p.detection.peaks.parabolic_refinement},
                    {"require_local_max", p.detection.peaks.require_local_max},
                    {"local_max_halfwidth", p.detection.peaks.local_max_halfwidth}};
  return j;
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j = pipeline_to_json(c.pipeline);
  const auto& o = c.catalog;
  j["scenario"] = {{"range_m", o.range_m},
                   {"elevation_deg", o.elevation_deg},
                   {"octahedral_amplitude_db", o.octahedral_amplitude_db},
                   {"wall_amplitude_db", o.wall_amplitude_db},
                   {"reference_snr_db", o.reference_snr_db},
                   {"rear_wall",
                    {{"enabled", o.rear_wall.enabled},
                     {"range_m", o.rear_wall.range_m},
                     {"amplitude_db", o.rear_wall.amplitude_db},
                     {"naf_extent", o.rear_wall.naf_extent},
                     {"n_scatterers", o.rear_wall.n_scatterers}}}};
  j["seeds"] = {{"master", c.master_seed}, {"count", c.n_seeds}, {"threads", c.threads}};
  return j;
}

bool apply_seed_env(RunConfig& config) {
  const char* v = std::getenv("BEAMSWEEP_SEED");
  if (!v || !*v) return false;
  char* end = nullptr;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (!end || *end != '\0') throw ConfigError(std::string("BEAMSWEEP_SEED is not an unsigned integer: ") + v);
  config.master_seed = s;
  return true;
}

}  // namespace beamsweep
