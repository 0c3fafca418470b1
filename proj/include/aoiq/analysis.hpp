#pragma once

#include <utility>
#include <vector>

#include "aoiq/amc.hpp"
#include "aoiq/linalg.hpp"
#include "aoiq/policy.hpp"

namespace aoiq {

/// Region boundaries of one renewal cycle that starts at system age gamma:
/// shifted[i] = max(threshold(i) - gamma, 0) and gaps[i] = shifted[i] -
/// shifted[i-1] (gaps[0] = 0). The final region is unbounded and carries
/// no finite entry.
struct CycleOffsets {
  int gamma = 0;
  std::vector<int> shifted;
  std::vector<int> gaps;
};

CycleOffsets cycle_offsets(const PreemptionPolicy& policy, int gamma);

/// P(absorption time > n) for a cycle starting at system age gamma.
double tail_tau(const EvaluationScenario& scenario, int gamma, long long n);

/// First and second moments of the absorption time, in closed form via the
/// fundamental matrix of the final region.
std::pair<double, double> moments_tau(const EvaluationScenario& scenario, int gamma);

/// Same moments as term-by-term tail sums, truncated once the running term
/// k * P(tau > k) drops below tol inside the final (geometrically
/// contracting) region. Serves as the independent cross-check for
/// moments_tau. Throws NumericalError("no-convergence") past max_terms.
std::pair<double, double> moments_tau_truncated(const EvaluationScenario& scenario, int gamma,
                                                double tol, long long max_terms = 1'000'000);

/// Markov chain of the age right after each successful delivery: reset_age
/// transition matrix B (rows/columns are ages 1..M) and its stationary
/// distribution.
struct ResetDistribution {
  Matrix B;
  std::vector<double> pi;
};

ResetDistribution reset_matrix(const EvaluationScenario& scenario);

/// Everything average_aoi computes: the average age, the reset-age
/// distribution and per-start-age absorption-time moments (index gamma-1).
struct AoiReport {
  double delta_bar = 0.0;
  ResetDistribution reset;
  std::vector<double> m1;
  std::vector<double> m2;
};

AoiReport average_aoi(const EvaluationScenario& scenario);

/// Reusable evaluator: all buffers are kept across calls so repeated
/// evaluations (grid searches) never allocate once shapes settle.
class AoiEvaluator {
 public:
  /// Average age; throws NumericalError("nonabsorbing") when the final
  /// region does not absorb.
  double evaluate(const EvaluationScenario& scenario);
  double evaluate(const DelayModel& model, double arrival_prob, const PolicyView& policy);

  /// Same, but returns NaN instead of throwing. Hot-path entry point.
  double evaluate_or_nan(const DelayModel& model, double arrival_prob,
                         const PolicyView& policy) noexcept;

  // Results of the last successful evaluate().
  double delta_bar() const { return delta_bar_; }
  const std::vector<double>& m1() const { return m1_; }
  const std::vector<double>& m2() const { return m2_; }
  const std::vector<double>& pi() const { return pi_; }
  const Matrix& reset_B() const { return B_; }

  /// Rebuild only the matrices of one region (policy row changed). The next
  /// evaluate_loaded() call reuses every other region untouched.
  void load_region(const DelayModel& model, double arrival_prob, int region,
                   std::span<const double> row);
  void set_shape(const DelayModel& model, std::span<const int> thresholds);
  double evaluate_loaded() noexcept;

 private:
  double run() noexcept;

  int max_age_ = -1;
  int regions_ = -1;
  std::vector<int> thresholds_;
  std::vector<Matrix> S_;
  std::vector<Matrix> A_;
  LuSolver lu_;
  Matrix C_;  // (I - S_last)^{-1} A_last
  Matrix B_;
  std::vector<double> x1_, x2_;
  std::vector<double> v_, vnext_, brow_, u_;
  std::vector<double> m1_, m2_, pi_;
  StationarySolver stationary_;
  double delta_bar_ = 0.0;
  bool last_dirty_ = true;
};

}  // namespace aoiq
