#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kronlab/symbolic.hpp"

namespace kronlab {

inline constexpr const char* kToolVersion = "0.1.0";

struct ScenarioConfig {
  std::string name;
  uint64_t seed = 1;
  Tier tier = Tier::symbolic;
  int precision_bits = kDefaultPrecisionBits;
  std::map<std::string, std::string> parameters;
  std::string output_dir;  // empty: no artifacts written
};

struct ScenarioAssertion {
  std::string name;
  std::string operation;
  std::string tolerance;
  bool pass = false;
  std::string details;
};

struct ScenarioReport {
  std::string name;
  std::string version = kToolVersion;
  uint64_t config_hash = 0;
  std::vector<ScenarioAssertion> assertions;
  std::vector<std::string> artifacts;
  double elapsed_seconds = 0;
  bool all_pass = false;

  std::string to_json() const;
};

std::vector<std::string> registered_scenarios();

/// Runs one registered scenario deterministically under (seed, config).
/// Throws on unknown names; assertion failures are data in the report.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

}  // namespace kronlab
