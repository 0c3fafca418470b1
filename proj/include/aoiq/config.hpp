#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aoiq/policy.hpp"

namespace aoiq {

/// Parsed `distribution` section; params are kept so sweeps can rebuild
/// the model with one of them replaced.
struct DistributionSpec {
  std::string kind;  // weibull | geometric | tail
  double alpha = 0.0;
  double beta = 0.0;
  double y = 0.0;
  std::vector<double> tail;
  int max_age = 0;

  DelayModel build() const;
};

struct SimSection {
  long long slots = 1'000'000;
  long long warmup = 10'000;
  uint64_t seed = 1;
};

/// One config file drives every subcommand. Sections: distribution,
/// policy, arrivals (q), sim (slots/warmup/seed) and optimizer
/// (grid_step); the last two fall back to defaults when absent.
struct AppConfig {
  DistributionSpec distribution;
  PreemptionPolicy policy;
  double arrival_prob;
  SimSection sim;
  double grid_step = 0.05;

  EvaluationScenario scenario() const;
};

/// Load and validate a JSON config. Throws ValidationError with code
/// "missing-config" when the file cannot be read and "malformed-config"
/// for syntax or schema problems.
AppConfig load_config(const std::string& path);
AppConfig parse_config(const std::string& text);

}  // namespace aoiq
