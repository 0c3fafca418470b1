#pragma once

#include <span>
#include <vector>

#include "aoiq/errors.hpp"

namespace aoiq {

/// Discrete random channel delay, represented through its hazard sequence:
/// hazard(n) is the probability that a transmission finishes in the next
/// slot given that n slots have elapsed, for n = 0..max_age()-1. Packets
/// older than max_age() are discarded, so later hazards are never queried.
class DelayModel {
 public:
  explicit DelayModel(std::vector<double> hazards);

  /// Delay with tail P(Y > k) = alpha^(k^beta). beta = 1 is geometric,
  /// beta > 1 has increasing hazards, beta < 1 decreasing.
  static DelayModel weibull(double alpha, double beta, int max_age);

  /// Constant hazard y in every slot.
  static DelayModel geometric(double y, int max_age);

  /// From tail probabilities T(0..max_age): hazard(n) = 1 - T(n+1)/T(n).
  /// Requires T(0) = 1, T non-increasing, and T(n) > 0 for n < max_age.
  static DelayModel from_tail(std::span<const double> tail, int max_age);

  int max_age() const { return static_cast<int>(hazards_.size()); }
  double hazard(int n) const { return hazards_[n]; }
  std::span<const double> hazards() const { return hazards_; }

 private:
  std::vector<double> hazards_;
};

enum class HazardProfile {
  Constant,            // all hazards equal
  Nonincreasing,       // hazard(n) <= hazard(0) for every n > 0
  IncreasingSomewhere  // some hazard exceeds hazard(0)
};

HazardProfile hazard_profile(const DelayModel& model);
const char* to_string(HazardProfile profile);

}  // namespace aoiq
