#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aoiq/analysis.hpp"
#include "aoiq/delay_model.hpp"
#include "aoiq/policy.hpp"

namespace aoiq {

/// Result of an exhaustive family search. `params` echoes the optimum in
/// family-native form (empty for always-preempt); ties are broken toward
/// the lexicographically smallest parameter tuple, enumerated in the order
/// (p), (p1, p2, delta), (p1..p4, delta1, delta2, gamma).
struct OptResult {
  PolicyKind kind;
  std::vector<std::pair<std::string, double>> params;
  double delta_bar = 0.0;
  long long evaluated = 0;
  long long skipped_nonabsorbing = 0;
  std::optional<PreemptionPolicy> policy;
};

/// Exhaustive grid search over one policy family. grid_step applies to the
/// continuous probabilities of the probabilistic and packet-age families
/// and must divide 1; the packet/system-age family is searched over
/// deterministic probabilities with the system-age threshold ranging over
/// 1..3*max_age-1. Points whose final region fails to absorb are skipped.
OptResult grid_optimize(PolicyKind kind, const DelayModel& model, double arrival_prob,
                        double grid_step);

/// Exhaustive comparison of deterministic against randomized per-state
/// policies on a small instance. Regions isolate each system age up to
/// delta_cap (thresholds 0, 2, 3, ..., delta_cap), beyond which the last
/// row repeats. `holds` when the best deterministic policy is at least as
/// good as the best randomized grid policy (tolerance 1e-9).
struct DominanceReport {
  bool holds = false;
  double det_delta = 0.0;
  double rand_delta = 0.0;
  std::optional<PreemptionPolicy> det_policy;
  std::optional<PreemptionPolicy> rand_policy;
  long long evaluated = 0;
  long long skipped_nonabsorbing = 0;
};

DominanceReport check_deterministic_dominance(const DelayModel& model, double arrival_prob,
                                              double prob_grid_step, int delta_cap = 4,
                                              int threads = 0,
                                              long long max_points = 300'000'000);

/// Desk check of the always-preempt optimality condition: applicable when
/// q = 1 and no hazard exceeds hazard(0). When applicable, ap_delta must
/// match the closed form 1 + (1-y0)/y0 and `optimal` reports whether any
/// policy in the family grids (step 0.25) beats it.
struct AlwaysPreemptReport {
  bool applicable = false;
  double ap_delta = 0.0;
  double closed_form = 0.0;
  bool optimal = false;
};

AlwaysPreemptReport check_always_preempt(const DelayModel& model, double arrival_prob);

}  // namespace aoiq
