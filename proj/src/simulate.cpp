#include "aoiq/simulate.hpp"

#include <cmath>
#include <random>

#include "aoiq/errors.hpp"

namespace aoiq {

namespace {

constexpr int kTargetBatches = 40;

// Canonical 53-bit uniform in [0, 1); identical on every platform for a
// given seed, unlike std::uniform_real_distribution.
class SlotRng {
 public:
  explicit SlotRng(uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

// Rational approximation of the standard normal quantile (Acklam),
// accurate to ~1e-9 over (0, 1).
double normal_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double u = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
           ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  if (p > 1.0 - plow) {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
           ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  const double u = p - 0.5;
  const double t = u * u;
  return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u /
         (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
}

}  // namespace

SimStats simulate(const EvaluationScenario& scenario, long long slots, long long warmup,
                  uint64_t seed) {
  if (warmup < 0 || slots <= warmup)
    throw ValidationError("invalid-configuration", "need slots > warmup >= 0");

  const DelayModel& model = scenario.model;
  const PreemptionPolicy& policy = scenario.policy;
  const double q = scenario.arrival_prob;
  const int M = model.max_age();

  const long long measured = slots - warmup;
  const long long batches = std::min<long long>(kTargetBatches, measured);
  const long long batch_size = measured / batches;

  SimStats stats;
  stats.slots = slots;
  stats.warmup = warmup;
  stats.reset_histogram.assign(M, 0);
  stats.batch_means.assign(batches, 0.0);
  stats.batch_size = batch_size;

  SlotRng rng(seed);
  long long delta = 1;  // system age; starts idle at age one, warmup absorbs the bias
  bool busy = false;
  int aop = 0;

  double total = 0.0;
  for (long long slot = 0; slot < slots; ++slot) {
    const long long idx = slot - warmup;
    if (idx >= 0) {
      total += static_cast<double>(delta);
      if (idx < batches * batch_size) stats.batch_means[idx / batch_size] += delta;
    }

    // (1) arrival, (2) admission / preemption, (3) delivery - fixed order.
    const bool arrival = rng.uniform() < q;
    if (arrival) {
      const auto row = policy.row(policy.region_index(delta));
      if (!busy) {
        if (rng.uniform() < row[0]) {
          busy = true;
          aop = 0;
        }
      } else if (rng.uniform() < row[aop]) {
        aop = 0;  // old packet discarded
      }
    }

    if (busy && aop < M && rng.uniform() < model.hazard(aop)) {
      delta = aop + 1;
      busy = false;
      if (idx >= 0) {
        ++stats.deliveries;
        ++stats.reset_histogram[aop];
      }
    } else {
      ++delta;
      if (busy && ++aop > M) busy = false;  // stale, discarded
    }
  }

  stats.mean_aoi = total / static_cast<double>(measured);
  for (double& b : stats.batch_means) b /= static_cast<double>(batch_size);
  return stats;
}

std::pair<double, double> confidence_interval(const SimStats& stats, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw ValidationError("invalid-parameter", "confidence level must be in (0, 1)");
  const size_t k = stats.batch_means.size();
  if (k < 20) throw ValidationError("insufficient-batches", "need at least 20 batches");

  double grand = 0.0;
  for (double b : stats.batch_means) grand += b;
  grand /= static_cast<double>(k);
  double var = 0.0;
  for (double b : stats.batch_means) var += (b - grand) * (b - grand);
  var /= static_cast<double>(k - 1);

  const double z = normal_quantile(0.5 + level / 2.0);
  const double half = z * std::sqrt(var / static_cast<double>(k));
  return {grand - half, grand + half};
}

}  // namespace aoiq
