#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aoiq/config.hpp"
#include "aoiq/optimize.hpp"

namespace aoiq {

enum class SweepParam { Q, Beta, Alpha };

SweepParam sweep_param_from_string(const std::string& name);

/// One CSV row: the swept parameter value, the family name, the optimized
/// average age and the family-native optimum parameters.
struct SweepRow {
  double param = 0.0;
  std::string family;
  double delta_bar = 0.0;
  std::vector<std::pair<std::string, double>> params;
};

/// Optimize every requested family at each grid point of the swept
/// parameter. Sweeping beta or alpha requires a weibull distribution.
std::vector<SweepRow> run_sweep(const AppConfig& config, SweepParam param, double from,
                                double to, double step, const std::vector<PolicyKind>& families);

/// CSV with header `param,family,delta_bar,params`, rows sorted by
/// (param, family); delta_bar keeps 9 significant digits including
/// trailing zeros, params is a semicolon-joined name=value list.
std::string format_sweep_csv(std::vector<SweepRow> rows);

/// Writes the CSV; refuses empty results before touching the file.
void write_sweep_csv(std::vector<SweepRow> rows, const std::string& path);

}  // namespace aoiq
