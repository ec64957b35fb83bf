#pragma once

#include "ahcert/comparison.hpp"
#include "ahcert/schedule.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace ahcert {

struct DensityConfig {
  int target_stage = 0;
  int cutoff = 0;
  int samples = 0;  // 0 disables the diagnostic
};

struct RunConfig {
  Schedule schedule;
  int stage_cap = 3;
  int kappa_stage = 6;
  Rat rho;
  int check_depth = 6;
  std::uint64_t seed = 0;
  DensityConfig density;
  int intertwine_max_stage = 8;  // verified for n <= min(stage_cap - 1, this)
  int spot_samples = 25;         // numerical diagnostic; 0 disables
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& c);

/// Full pipeline result. The JSON body is canonical: deterministic for a
/// given (config, seed), no wall-clock content. Timing and prose live in the
/// transcript. exit_code: 0 all exact checks pass, 1 otherwise.
struct RunReport {
  nlohmann::json body;
  std::string transcript;
  bool all_exact_pass = false;
  int exit_code() const { return all_exact_pass ? 0 : 1; }
};

RunReport run_pipeline(const RunConfig& config);

}  // namespace ahcert
