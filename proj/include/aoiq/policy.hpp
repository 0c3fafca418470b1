#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aoiq/delay_model.hpp"
#include "aoiq/errors.hpp"

namespace aoiq {

enum class PolicyKind { AlwaysPreempt, Probabilistic, PacketAge, PacketSystemAge };

const char* to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

/// Family-native parameters a named policy was built from, kept around so
/// search results can be reported in the same terms.
struct NamedPolicy {
  PolicyKind kind;
  std::vector<std::pair<std::string, double>> params;
};

/// Non-owning view of a policy, used by the allocation-free evaluator.
struct PolicyView {
  std::span<const int> thresholds;  // finite ascending, first entry 0
  const double* table;              // regions x (max_age+1), row-major
  int regions;
  int max_age;

  std::span<const double> row(int region) const {
    return {table + static_cast<size_t>(region - 1) * (max_age + 1),
            static_cast<size_t>(max_age + 1)};
  }
};

/// Preemption policy over system-age regions. Region i (1-based) covers
/// system ages in [threshold(i-1), threshold(i)), with the final region
/// unbounded. Each region has a probability row of length max_age+1:
/// entry 0 is the idle admission probability, entry k (1 <= k <= max_age)
/// the probability of preempting an in-service packet of age k when a new
/// packet is generated.
class PreemptionPolicy {
 public:
  /// thresholds lists the finite region boundaries (first must be 0); the
  /// final region extends to infinity and is not terminated by a marker.
  PreemptionPolicy(std::vector<int> thresholds,
                   const std::vector<std::vector<double>>& table, int max_age);

  static PreemptionPolicy always_preempt(int max_age);
  static PreemptionPolicy probabilistic(double p, int max_age);
  /// Preempt with p_low below split_age and p_high at or above it; idle
  /// admission is always 1.
  static PreemptionPolicy packet_age(double p_low, double p_high, int split_age, int max_age);
  /// Two regions split at system age `gamma`; each region is a deterministic
  /// packet-age rule (probabilities restricted to {0,1}); idle admission is
  /// 1 in both regions. Requires 1 <= gamma <= 3*max_age - 1.
  static PreemptionPolicy packet_system_age(double p1, double p2, double p3, double p4,
                                            int split1, int split2, int gamma, int max_age);

  int regions() const { return static_cast<int>(thresholds_.size()); }
  int max_age() const { return max_age_; }

  int threshold(int i) const { return thresholds_[i]; }
  std::span<const int> thresholds() const { return thresholds_; }

  std::span<const double> row(int region) const {
    return {table_.data() + static_cast<size_t>(region - 1) * (max_age_ + 1),
            static_cast<size_t>(max_age_ + 1)};
  }
  double admit_prob(int region) const { return row(region)[0]; }
  double preempt_prob(int region, int age) const { return row(region)[age]; }

  /// The unique region i with threshold(i-1) <= delta < threshold(i).
  int region_index(long long delta) const;

  PolicyView view() const {
    return PolicyView{thresholds_, table_.data(), regions(), max_age_};
  }

  const std::optional<NamedPolicy>& named() const { return named_; }

 private:
  PreemptionPolicy(int max_age, std::vector<int> thresholds, std::vector<double> flat_table);

  std::vector<int> thresholds_;
  std::vector<double> table_;  // regions x (max_age+1)
  int max_age_ = 0;
  std::optional<NamedPolicy> named_;
};

/// A complete system instance: delay law, preemption policy and the
/// per-slot arrival probability.
struct EvaluationScenario {
  DelayModel model;
  PreemptionPolicy policy;
  double arrival_prob;

  EvaluationScenario(DelayModel model, PreemptionPolicy policy, double arrival_prob);
};

}  // namespace aoiq
