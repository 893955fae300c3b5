#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "beamsweep/pipeline.hpp"
#include "beamsweep/scenario.hpp"

namespace beamsweep {

struct RunConfig {
  PipelineConfig pipeline;
  CatalogOptions catalog;
  std::uint64_t master_seed = 1;
  int n_seeds = 20;
  int threads = 1;

  // master_seed, master_seed + 1, ...
  std::vector<std::uint64_t> seeds() const;
};

// JSON sections: radio, array, sweep, scenario, omp, cfar, detection, seeds.
// Unknown keys are rejected so typos surface as configuration errors.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::ordered_json config_to_json(const RunConfig& config);
nlohmann::ordered_json pipeline_to_json(const PipelineConfig& config);

// Applies BEAMSWEEP_SEED if set. Returns true when the variable was present.
bool apply_seed_env(RunConfig& config);

}  // namespace beamsweep
