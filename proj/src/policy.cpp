#include "aoiq/policy.hpp"

#include <cmath>

namespace aoiq {

namespace {

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError("probability-out-of-range", std::string(what) + " must be in [0, 1]");
}

void check_binary(double p, const char* what) {
  if (p != 0.0 && p != 1.0)
    throw ValidationError("invalid-parameter", std::string(what) + " must be 0 or 1");
}

}  // namespace

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::AlwaysPreempt:
      return "ap";
    case PolicyKind::Probabilistic:
      return "pp";
    case PolicyKind::PacketAge:
      return "pap";
    case PolicyKind::PacketSystemAge:
      return "psp";
  }
  return "unknown";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "ap") return PolicyKind::AlwaysPreempt;
  if (name == "pp") return PolicyKind::Probabilistic;
  if (name == "pap") return PolicyKind::PacketAge;
  if (name == "psp") return PolicyKind::PacketSystemAge;
  throw ValidationError("invalid-parameter", "unknown policy family: " + name);
}

PreemptionPolicy::PreemptionPolicy(int max_age, std::vector<int> thresholds,
                                   std::vector<double> flat_table)
    : thresholds_(std::move(thresholds)), table_(std::move(flat_table)), max_age_(max_age) {}

PreemptionPolicy::PreemptionPolicy(std::vector<int> thresholds,
                                   const std::vector<std::vector<double>>& table, int max_age)
    : thresholds_(std::move(thresholds)), max_age_(max_age) {
  if (max_age_ < 1) throw ValidationError("invalid-parameter", "max_age must be >= 1");
  if (thresholds_.empty() || thresholds_[0] != 0)
    throw ValidationError("nonmonotone-thresholds", "first threshold must be 0");
  for (size_t i = 1; i < thresholds_.size(); ++i)
    if (thresholds_[i] <= thresholds_[i - 1])
      throw ValidationError("nonmonotone-thresholds", "thresholds must be strictly increasing");
  if (table.size() != thresholds_.size())
    throw ValidationError("row-length-mismatch", "need exactly one probability row per region");
  table_.reserve(table.size() * (max_age_ + 1));
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != max_age_ + 1)
      throw ValidationError("row-length-mismatch", "each row needs max_age + 1 entries");
    for (double p : row) {
      check_prob(p, "table entry");
      table_.push_back(p);
    }
  }
}

PreemptionPolicy PreemptionPolicy::always_preempt(int max_age) {
  if (max_age < 1) throw ValidationError("invalid-parameter", "max_age must be >= 1");
  PreemptionPolicy p(max_age, {0}, std::vector<double>(max_age + 1, 1.0));
  p.named_ = NamedPolicy{PolicyKind::AlwaysPreempt, {}};
  return p;
}

PreemptionPolicy PreemptionPolicy::probabilistic(double prob, int max_age) {
  if (max_age < 1) throw ValidationError("invalid-parameter", "max_age must be >= 1");
  check_prob(prob, "p");
  std::vector<double> row(max_age + 1, prob);
  row[0] = 1.0;
  PreemptionPolicy p(max_age, {0}, std::move(row));
  p.named_ = NamedPolicy{PolicyKind::Probabilistic, {{"p", prob}}};
  return p;
}

PreemptionPolicy PreemptionPolicy::packet_age(double p_low, double p_high, int split_age,
                                              int max_age) {
  if (max_age < 1) throw ValidationError("invalid-parameter", "max_age must be >= 1");
  check_prob(p_low, "p1");
  check_prob(p_high, "p2");
  if (split_age < 1 || split_age > max_age)
    throw ValidationError("invalid-parameter", "split age must be in 1..max_age");
  std::vector<double> row(max_age + 1);
  row[0] = 1.0;
  for (int k = 1; k <= max_age; ++k) row[k] = k < split_age ? p_low : p_high;
  PreemptionPolicy p(max_age, {0}, std::move(row));
  p.named_ = NamedPolicy{PolicyKind::PacketAge,
                         {{"p1", p_low}, {"p2", p_high}, {"delta", double(split_age)}}};
  return p;
}

PreemptionPolicy PreemptionPolicy::packet_system_age(double p1, double p2, double p3, double p4,
                                                     int split1, int split2, int gamma,
                                                     int max_age) {
  if (max_age < 1) throw ValidationError("invalid-parameter", "max_age must be >= 1");
  check_binary(p1, "p1");
  check_binary(p2, "p2");
  check_binary(p3, "p3");
  check_binary(p4, "p4");
  if (split1 < 1 || split1 > max_age || split2 < 1 || split2 > max_age)
    throw ValidationError("invalid-parameter", "split ages must be in 1..max_age");
  if (gamma < 1 || gamma > 3 * max_age - 1)
    throw ValidationError("invalid-parameter", "gamma must be in 1..3*max_age-1");
  std::vector<double> flat;
  flat.reserve(2 * (max_age + 1));
  flat.push_back(1.0);
  for (int k = 1; k <= max_age; ++k) flat.push_back(k < split1 ? p1 : p2);
  flat.push_back(1.0);
  for (int k = 1; k <= max_age; ++k) flat.push_back(k < split2 ? p3 : p4);
  PreemptionPolicy p(max_age, {0, gamma}, std::move(flat));
  p.named_ = NamedPolicy{PolicyKind::PacketSystemAge,
                         {{"p1", p1},
                          {"p2", p2},
                          {"p3", p3},
                          {"p4", p4},
                          {"delta1", double(split1)},
                          {"delta2", double(split2)},
                          {"gamma", double(gamma)}}};
  return p;
}

int PreemptionPolicy::region_index(long long delta) const {
  if (delta < 0)
    throw ValidationError("invalid-parameter", "system age must be non-negative");
  int i = 1;
  for (size_t j = 1; j < thresholds_.size() && thresholds_[j] <= delta; ++j) ++i;
  return i;
}

EvaluationScenario::EvaluationScenario(DelayModel model_in, PreemptionPolicy policy_in,
                                       double arrival_prob_in)
    : model(std::move(model_in)), policy(std::move(policy_in)), arrival_prob(arrival_prob_in) {
  if (policy.max_age() != model.max_age())
    throw ValidationError("invalid-parameter", "policy and delay model disagree on max_age");
  if (!(arrival_prob >= 0.0 && arrival_prob <= 1.0))
    throw ValidationError("probability-out-of-range", "arrival probability must be in [0, 1]");
}

}  // namespace aoiq
