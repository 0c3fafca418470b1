#include "aoiq/cli.hpp"

#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "aoiq/analysis.hpp"
#include "aoiq/config.hpp"
#include "aoiq/format.hpp"
#include "aoiq/optimize.hpp"
#include "aoiq/simulate.hpp"
#include "aoiq/sweep.hpp"

namespace aoiq {

namespace {

std::vector<PolicyKind> parse_families(const std::string& csv) {
  std::vector<PolicyKind> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(policy_kind_from_string(token));
  }
  if (out.empty()) throw ValidationError("invalid-parameter", "no policy families given");
  return out;
}

void print_params(std::ostream& out, const std::vector<std::pair<std::string, double>>& params) {
  for (size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out << ';';
    out << params[i].first << '=' << sig9(params[i].second);
  }
}

void cmd_evaluate(const std::string& config_path, std::ostream& out) {
  const AppConfig cfg = load_config(config_path);
  const AoiReport report = average_aoi(cfg.scenario());
  out << "delta_bar = " << fixed9(report.delta_bar) << "\n";
  out << "pi =";
  for (double p : report.reset.pi) out << ' ' << fixed9(p);
  out << "\n";
  for (size_t g = 0; g < report.m1.size(); ++g)
    out << "gamma=" << g + 1 << " m1=" << fixed9(report.m1[g]) << " m2=" << fixed9(report.m2[g])
        << "\n";
}

struct SimOverrides {
  std::optional<long long> slots;
  std::optional<long long> warmup;
  std::optional<uint64_t> seed;
};

void cmd_simulate(const std::string& config_path, const SimOverrides& overrides, double level,
                  std::ostream& out) {
  AppConfig cfg = load_config(config_path);
  if (overrides.slots) cfg.sim.slots = *overrides.slots;
  if (overrides.warmup) cfg.sim.warmup = *overrides.warmup;
  if (overrides.seed) cfg.sim.seed = *overrides.seed;
  const SimStats stats =
      simulate(cfg.scenario(), cfg.sim.slots, cfg.sim.warmup, cfg.sim.seed);
  const auto [lo, hi] = confidence_interval(stats, level);
  out << "mean_aoi = " << fixed9(stats.mean_aoi) << "\n";
  out << "ci_level = " << sig9(level) << "\n";
  out << "ci = [" << fixed9(lo) << ", " << fixed9(hi) << "]\n";
  out << "slots = " << stats.slots << "\n";
  out << "warmup = " << stats.warmup << "\n";
  out << "seed = " << cfg.sim.seed << "\n";
  out << "deliveries = " << stats.deliveries << "\n";
}

void cmd_optimize(const std::string& config_path, const std::string& family, double grid_step,
                  std::ostream& out) {
  const AppConfig cfg = load_config(config_path);
  const PolicyKind kind = policy_kind_from_string(family);
  const double step = grid_step > 0.0 ? grid_step : cfg.grid_step;
  const OptResult result = grid_optimize(kind, cfg.distribution.build(), cfg.arrival_prob, step);
  out << "family = " << to_string(result.kind) << "\n";
  out << "delta_bar = " << fixed9(result.delta_bar) << "\n";
  out << "params = ";
  print_params(out, result.params);
  out << "\n";
  out << "evaluated = " << result.evaluated << "\n";
  out << "skipped_nonabsorbing = " << result.skipped_nonabsorbing << "\n";
}

void cmd_sweep(const std::string& config_path, const std::string& param, double from, double to,
               double step, const std::string& families_csv, const std::string& out_path,
               std::ostream& out) {
  const AppConfig cfg = load_config(config_path);
  const SweepParam param_kind = sweep_param_from_string(param);
  const std::vector<PolicyKind> families = parse_families(families_csv);
  std::vector<SweepRow> rows = run_sweep(cfg, param_kind, from, to, step, families);
  const size_t count = rows.size();
  write_sweep_csv(std::move(rows), out_path);
  out << "wrote " << out_path << ": " << count << " rows\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Average age-of-information toolkit for preemptive status updates", "aoiq"};
  app.require_subcommand(1);

  std::string config_path;
  std::string family;
  std::string param;
  std::string families_csv;
  std::string out_path;
  long long slots = 0, warmup = 0;
  uint64_t seed = 0;
  double level = 0.99;
  double grid_step = -1.0;
  double from = 0.0, to = 0.0, step = 0.0;

  auto* evaluate = app.add_subcommand("evaluate", "Average age of one scenario");
  evaluate->add_option("--config", config_path, "JSON config file")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the average age");
  simulate->add_option("--config", config_path, "JSON config file")->required();
  simulate->add_option("--slots", slots, "simulated slots (overrides config)");
  simulate->add_option("--warmup", warmup, "warmup slots (overrides config)");
  simulate->add_option("--seed", seed, "RNG seed (overrides config)");
  simulate->add_option("--level", level, "confidence level (default 0.99)");

  auto* optimize = app.add_subcommand("optimize", "Exhaustive search over one policy family");
  optimize->add_option("--config", config_path, "JSON config file")->required();
  optimize->add_option("--family", family, "ap|pp|pap|psp")->required();
  optimize->add_option("--grid-step", grid_step, "probability grid step (overrides config)");

  auto* sweep = app.add_subcommand("sweep", "Optimize families along a parameter grid, as CSV");
  sweep->add_option("--config", config_path, "JSON config file")->required();
  sweep->add_option("--param", param, "q|beta|alpha")->required();
  sweep->add_option("--from", from, "first value")->required();
  sweep->add_option("--to", to, "last value")->required();
  sweep->add_option("--step", step, "grid spacing")->required();
  sweep->add_option("--families", families_csv, "comma-separated families")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (evaluate->parsed()) {
      cmd_evaluate(config_path, out);
    } else if (simulate->parsed()) {
      SimOverrides overrides;
      if (simulate->count("--slots")) overrides.slots = slots;
      if (simulate->count("--warmup")) overrides.warmup = warmup;
      if (simulate->count("--seed")) overrides.seed = seed;
      cmd_simulate(config_path, overrides, level, out);
    } else if (optimize->parsed()) {
      cmd_optimize(config_path, family, grid_step, out);
    } else if (sweep->parsed()) {
      cmd_sweep(config_path, param, from, to, step, families_csv, out_path, out);
    }
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace aoiq
