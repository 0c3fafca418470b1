#include "aoiq/delay_model.hpp"

#include <algorithm>
#include <cmath>

namespace aoiq {

namespace {
constexpr double kEqTol = 1e-12;
}

DelayModel::DelayModel(std::vector<double> hazards) : hazards_(std::move(hazards)) {
  if (hazards_.empty())
    throw ValidationError("invalid-parameter", "delay model needs at least one hazard");
  for (double y : hazards_)
    if (!(y >= 0.0 && y <= 1.0))
      throw ValidationError("invalid-parameter", "hazards must lie in [0, 1]");
}

DelayModel DelayModel::weibull(double alpha, double beta, int max_age) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("invalid-parameter", "weibull alpha must be in (0, 1)");
  if (!(beta > 0.0)) throw ValidationError("invalid-parameter", "weibull beta must be positive");
  if (max_age < 1) throw ValidationError("invalid-parameter", "max_age must be >= 1");
  std::vector<double> hazards(max_age);
  for (int n = 0; n < max_age; ++n) {
    const double diff = std::pow(n + 1.0, beta) - std::pow(static_cast<double>(n), beta);
    hazards[n] = 1.0 - std::pow(alpha, diff);
  }
  return DelayModel(std::move(hazards));
}

DelayModel DelayModel::geometric(double y, int max_age) {
  if (!(y >= 0.0 && y <= 1.0))
    throw ValidationError("invalid-parameter", "geometric hazard must be in [0, 1]");
  if (max_age < 1) throw ValidationError("invalid-parameter", "max_age must be >= 1");
  return DelayModel(std::vector<double>(max_age, y));
}

DelayModel DelayModel::from_tail(std::span<const double> tail, int max_age) {
  if (max_age < 1) throw ValidationError("invalid-tail", "max_age must be >= 1");
  if (static_cast<int>(tail.size()) != max_age + 1)
    throw ValidationError("invalid-tail", "tail needs max_age + 1 values");
  if (std::abs(tail[0] - 1.0) > kEqTol)
    throw ValidationError("invalid-tail", "tail must start at 1");
  for (int n = 0; n <= max_age; ++n) {
    if (tail[n] < -kEqTol) throw ValidationError("invalid-tail", "tail values must be >= 0");
    if (n > 0 && tail[n] > tail[n - 1] + kEqTol)
      throw ValidationError("invalid-tail", "tail must be non-increasing");
  }
  std::vector<double> hazards(max_age);
  for (int n = 0; n < max_age; ++n) {
    if (tail[n] <= 0.0)
      throw ValidationError("invalid-tail", "tail hits zero before max_age");
    hazards[n] = std::clamp(1.0 - tail[n + 1] / tail[n], 0.0, 1.0);
  }
  return DelayModel(std::move(hazards));
}

HazardProfile hazard_profile(const DelayModel& model) {
  const double y0 = model.hazard(0);
  bool constant = true;
  bool bounded = true;
  for (int n = 1; n < model.max_age(); ++n) {
    if (model.hazard(n) != y0) constant = false;
    if (model.hazard(n) > y0) bounded = false;
  }
  if (constant) return HazardProfile::Constant;
  return bounded ? HazardProfile::Nonincreasing : HazardProfile::IncreasingSomewhere;
}

const char* to_string(HazardProfile profile) {
  switch (profile) {
    case HazardProfile::Constant:
      return "constant";
    case HazardProfile::Nonincreasing:
      return "nonincreasing";
    case HazardProfile::IncreasingSomewhere:
      return "increasing-somewhere";
  }
  return "unknown";
}

}  // namespace aoiq
