#pragma once

#include "aoiq/linalg.hpp"
#include "aoiq/policy.hpp"

namespace aoiq {

// State ordering used by every matrix in this project, with M = max_age:
//   transient states: packet ages 1..M at indices 0..M-1, idle at index M;
//   absorbing states: delivery at age j (1..M) at column j-1.
// The chain starts idle, so the start row vector has a one at index M.

/// Transient and absorbing blocks of the region-i transition matrix.
/// `transient` is (M+1)x(M+1), `absorb` is (M+1)xM; their row sums add
/// to one exactly.
struct RegionMatrices {
  Matrix transient;
  Matrix absorb;
  int region = 0;
};

RegionMatrices build_region_matrices(const EvaluationScenario& scenario, int region);

/// True when the transient block of the final region is strictly
/// substochastic in the spectral sense, i.e. absorption is certain. Decided
/// by solving (I - S) x = 1 and checking the solution is finite, >= 1 and
/// reproduces the right-hand side.
bool is_absorbing(const RegionMatrices& last_region);

/// Throws NumericalError("nonabsorbing") when is_absorbing fails.
void validate_absorbing(const RegionMatrices& last_region);

namespace detail {
/// Fill preallocated blocks for one region; row is that region's
/// probability row (idle admission followed by per-age preempt probs).
void fill_region_matrices(const DelayModel& model, double arrival_prob,
                          std::span<const double> row, Matrix& transient, Matrix& absorb);
}  // namespace detail

}  // namespace aoiq
