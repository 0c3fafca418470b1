#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "aoiq/policy.hpp"

namespace aoiq {

/// Slot-accurate simulation output. The mean covers every slot after the
/// warmup; batch means cover the first batch_size * batch_means.size() of
/// those slots (equal batches, any remainder counts toward the mean only).
/// Deliveries and the reset-age histogram are counted after warmup as well.
struct SimStats {
  long long slots = 0;
  long long warmup = 0;
  double mean_aoi = 0.0;
  long long deliveries = 0;
  std::vector<long long> reset_histogram;  // index age-1
  std::vector<double> batch_means;
  long long batch_size = 0;
};

/// Simulate `slots` time slots, discarding the first `warmup` from the
/// statistics. Per slot, in fixed draw order: (1) a packet is generated
/// with probability q; (2) it is admitted (idle) or preempts the packet in
/// service according to the policy row of the current system-age region;
/// (3) at slot end an in-service packet of age d < max_age delivers with
/// probability hazard(d), resetting the age to d+1; a surviving packet
/// that would exceed max_age is discarded to idle. The same seed always
/// produces identical results.
SimStats simulate(const EvaluationScenario& scenario, long long slots, long long warmup,
                  uint64_t seed);

/// Batch-means confidence interval using a normal quantile. Needs at least
/// 20 batches.
std::pair<double, double> confidence_interval(const SimStats& stats, double level);

}  // namespace aoiq
