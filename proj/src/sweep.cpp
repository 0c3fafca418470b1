#include "aoiq/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "aoiq/format.hpp"

namespace aoiq {

SweepParam sweep_param_from_string(const std::string& name) {
  if (name == "q") return SweepParam::Q;
  if (name == "beta") return SweepParam::Beta;
  if (name == "alpha") return SweepParam::Alpha;
  throw ValidationError("invalid-parameter", "sweep parameter must be q|beta|alpha");
}

std::vector<SweepRow> run_sweep(const AppConfig& config, SweepParam param, double from, double to,
                                double step, const std::vector<PolicyKind>& families) {
  if (families.empty())
    throw ValidationError("invalid-parameter", "need at least one policy family");
  if (!(step > 0.0) || from > to)
    throw ValidationError("invalid-parameter", "need from <= to and step > 0");
  if (param != SweepParam::Q && config.distribution.kind != "weibull")
    throw ValidationError("invalid-parameter",
                          "sweeping alpha or beta requires a weibull distribution");

  std::vector<SweepRow> rows;
  for (int k = 0;; ++k) {
    const double value = from + k * step;
    if (value > to + 1e-9) break;
    DistributionSpec dist = config.distribution;
    double q = config.arrival_prob;
    switch (param) {
      case SweepParam::Q:
        q = value;
        break;
      case SweepParam::Beta:
        dist.beta = value;
        break;
      case SweepParam::Alpha:
        dist.alpha = value;
        break;
    }
    const DelayModel model = dist.build();
    for (PolicyKind kind : families) {
      OptResult r = grid_optimize(kind, model, q, config.grid_step);
      rows.push_back(SweepRow{value, to_string(kind), r.delta_bar, std::move(r.params)});
    }
  }
  return rows;
}

std::string format_sweep_csv(std::vector<SweepRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.param != b.param) return a.param < b.param;
    return a.family < b.family;
  });
  std::string out = "param,family,delta_bar,params\n";
  for (const SweepRow& row : rows) {
    out += sig9(row.param);
    out += ',';
    out += row.family;
    out += ',';
    out += sig9z(row.delta_bar);
    out += ',';
    for (size_t i = 0; i < row.params.size(); ++i) {
      if (i > 0) out += ';';
      out += row.params[i].first;
      out += '=';
      out += sig9(row.params[i].second);
    }
    out += '\n';
  }
  return out;
}

void write_sweep_csv(std::vector<SweepRow> rows, const std::string& path) {
  if (rows.empty()) throw ValidationError("io-error", "refusing to write an empty sweep");
  const std::string text = format_sweep_csv(std::move(rows));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("io-error", "cannot open output file: " + path);
  out << text;
  if (!out.good()) throw ValidationError("io-error", "failed writing output file: " + path);
}

}  // namespace aoiq
