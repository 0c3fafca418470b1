#include "aoiq/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aoiq {

namespace {

using nlohmann::json;

const json& need(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ValidationError("malformed-config",
                          std::string("missing key '") + key + "' in " + where);
  return *it;
}

double need_number(const json& obj, const char* key, const char* where) {
  const json& v = need(obj, key, where);
  if (!v.is_number())
    throw ValidationError("malformed-config", std::string("'") + key + "' must be a number");
  return v.get<double>();
}

int need_int(const json& obj, const char* key, const char* where) {
  const json& v = need(obj, key, where);
  if (!v.is_number_integer())
    throw ValidationError("malformed-config", std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

long long need_int64(const json& obj, const char* key, const char* where) {
  const json& v = need(obj, key, where);
  if (!v.is_number_integer())
    throw ValidationError("malformed-config", std::string("'") + key + "' must be an integer");
  return v.get<long long>();
}

DistributionSpec parse_distribution(const json& j) {
  DistributionSpec spec;
  spec.kind = need(j, "kind", "distribution").get<std::string>();
  spec.max_age = need_int(j, "M", "distribution");
  if (spec.kind == "weibull") {
    spec.alpha = need_number(j, "alpha", "distribution");
    spec.beta = need_number(j, "beta", "distribution");
  } else if (spec.kind == "geometric") {
    spec.y = need_number(j, "y", "distribution");
  } else if (spec.kind == "tail") {
    const json& t = need(j, "tail", "distribution");
    if (!t.is_array())
      throw ValidationError("malformed-config", "'tail' must be an array of probabilities");
    spec.tail = t.get<std::vector<double>>();
  } else {
    throw ValidationError("malformed-config", "distribution kind must be weibull|geometric|tail");
  }
  return spec;
}

PreemptionPolicy parse_policy(const json& j, int max_age) {
  const std::string kind = need(j, "kind", "policy").get<std::string>();
  if (kind == "ap") return PreemptionPolicy::always_preempt(max_age);
  if (kind == "pp") return PreemptionPolicy::probabilistic(need_number(j, "p", "policy"), max_age);
  if (kind == "pap")
    return PreemptionPolicy::packet_age(need_number(j, "p1", "policy"),
                                        need_number(j, "p2", "policy"),
                                        need_int(j, "delta", "policy"), max_age);
  if (kind == "psp")
    return PreemptionPolicy::packet_system_age(
        need_number(j, "p1", "policy"), need_number(j, "p2", "policy"),
        need_number(j, "p3", "policy"), need_number(j, "p4", "policy"),
        need_int(j, "delta1", "policy"), need_int(j, "delta2", "policy"),
        need_int(j, "gamma", "policy"), max_age);
  if (kind == "custom") {
    const json& jt = need(j, "thresholds", "policy");
    const json& jr = need(j, "table", "policy");
    if (!jt.is_array() || !jr.is_array())
      throw ValidationError("malformed-config", "'thresholds' and 'table' must be arrays");
    return PreemptionPolicy(jt.get<std::vector<int>>(),
                            jr.get<std::vector<std::vector<double>>>(), max_age);
  }
  throw ValidationError("malformed-config", "policy kind must be ap|pp|pap|psp|custom");
}

}  // namespace

DelayModel DistributionSpec::build() const {
  if (kind == "weibull") return DelayModel::weibull(alpha, beta, max_age);
  if (kind == "geometric") return DelayModel::geometric(y, max_age);
  return DelayModel::from_tail(tail, max_age);
}

EvaluationScenario AppConfig::scenario() const {
  return EvaluationScenario(distribution.build(), policy, arrival_prob);
}

AppConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError("malformed-config", e.what());
  }
  try {
    DistributionSpec dist = parse_distribution(need(root, "distribution", "config"));
    const DelayModel model = dist.build();  // surfaces parameter errors early
    PreemptionPolicy policy = parse_policy(need(root, "policy", "config"), model.max_age());
    const double q = need_number(need(root, "arrivals", "config"), "q", "arrivals");

    AppConfig cfg{std::move(dist), std::move(policy), q, SimSection{}, 0.05};
    if (auto it = root.find("sim"); it != root.end()) {
      const json& s = *it;
      if (s.contains("slots")) cfg.sim.slots = need_int64(s, "slots", "sim");
      if (s.contains("warmup")) cfg.sim.warmup = need_int64(s, "warmup", "sim");
      if (s.contains("seed")) cfg.sim.seed = static_cast<uint64_t>(need_int64(s, "seed", "sim"));
    }
    if (auto it = root.find("optimizer"); it != root.end())
      if (it->contains("grid_step")) cfg.grid_step = need_number(*it, "grid_step", "optimizer");
    cfg.scenario();  // validate the combination once
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError("malformed-config", e.what());
  }
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("missing-config", "cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace aoiq
