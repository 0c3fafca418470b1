#include "aoiq/amc.hpp"

#include <cmath>

namespace aoiq {

namespace detail {

void fill_region_matrices(const DelayModel& model, double arrival_prob,
                          std::span<const double> row, Matrix& transient, Matrix& absorb) {
  const int M = model.max_age();
  transient.assign(M + 1, M + 1, 0.0);
  absorb.assign(M + 1, M, 0.0);

  const double q = arrival_prob;
  const double y0 = model.hazard(0);
  // Busy states: a packet of age k is preempted by a fresh arrival with
  // probability q * row[k]; otherwise it attempts delivery with hazard(k),
  // except at age M where the surviving packet is discarded to idle.
  for (int k = 1; k <= M; ++k) {
    const double qk = q * row[k];
    transient(k - 1, 0) = qk * (1.0 - y0);
    absorb(k - 1, 0) = qk * y0;
    if (k < M) {
      const double yk = model.hazard(k);
      transient(k - 1, k) = (1.0 - qk) * (1.0 - yk);
      absorb(k - 1, k) = (1.0 - qk) * yk;
    } else {
      transient(k - 1, M) = 1.0 - qk;
    }
  }
  // Idle state: a fresh arrival is admitted with probability q * row[0].
  const double q0 = q * row[0];
  transient(M, 0) = q0 * (1.0 - y0);
  transient(M, M) = 1.0 - q0;
  absorb(M, 0) = q0 * y0;
}

}  // namespace detail

RegionMatrices build_region_matrices(const EvaluationScenario& scenario, int region) {
  if (region < 1 || region > scenario.policy.regions())
    throw ValidationError("region-out-of-range", "region index outside 1..N");
  RegionMatrices out;
  out.region = region;
  detail::fill_region_matrices(scenario.model, scenario.arrival_prob,
                               scenario.policy.row(region), out.transient, out.absorb);
  return out;
}

bool is_absorbing(const RegionMatrices& last_region) {
  const Matrix& S = last_region.transient;
  LuSolver lu;
  if (!lu.try_factor_identity_minus(S)) return false;
  std::vector<double> x(S.rows(), 1.0);
  lu.solve(x);
  double norm = 1.0;
  for (double v : x) {
    if (!std::isfinite(v) || v < 1.0 - 1e-9) return false;
    norm = std::max(norm, std::abs(v));
  }
  // Residual of (I - S) x = 1.
  for (int r = 0; r < S.rows(); ++r) {
    double s = x[r] - 1.0;
    for (int c = 0; c < S.cols(); ++c) s -= S(r, c) * x[c];
    if (std::abs(s) > 1e-8 * norm) return false;
  }
  return true;
}

void validate_absorbing(const RegionMatrices& last_region) {
  if (!is_absorbing(last_region))
    throw NumericalError("nonabsorbing",
                         "final region does not absorb; every cycle would last forever");
}

}  // namespace aoiq
