#include "aoiq/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace aoiq {

namespace {

int grid_divisions(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1.0))
    throw ValidationError("invalid-grid", "grid step must be in (0, 1]");
  const double g = 1.0 / grid_step;
  const long long rounded = std::llround(g);
  if (rounded < 1 || std::abs(g - static_cast<double>(rounded)) > 1e-9)
    throw ValidationError("invalid-grid", "grid step must divide 1");
  return static_cast<int>(rounded);
}

void check_q(double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw ValidationError("probability-out-of-range", "arrival probability must be in [0, 1]");
}

struct BestPoint {
  double delta = std::numeric_limits<double>::infinity();
  long long evaluated = 0;
  long long skipped = 0;

  // Candidates must arrive in lexicographic parameter order: strict
  // improvement keeps the first (smallest) tuple on exact ties.
  bool offer(double d) {
    if (std::isnan(d)) {
      ++skipped;
      return false;
    }
    ++evaluated;
    if (d < delta) {
      delta = d;
      return true;
    }
    return false;
  }
};

}  // namespace

OptResult grid_optimize(PolicyKind kind, const DelayModel& model, double arrival_prob,
                        double grid_step) {
  check_q(arrival_prob);
  const int G = grid_divisions(grid_step);
  const int M = model.max_age();

  AoiEvaluator eval;
  OptResult out;
  out.kind = kind;
  BestPoint best;

  const std::vector<int> one_region{0};
  std::vector<double> row(M + 1, 1.0);
  const PolicyView single{one_region, row.data(), 1, M};

  switch (kind) {
    case PolicyKind::AlwaysPreempt: {
      best.offer(eval.evaluate_or_nan(model, arrival_prob, single));
      out.policy = PreemptionPolicy::always_preempt(M);
      break;
    }
    case PolicyKind::Probabilistic: {
      double best_p = 0.0;
      for (int i = 0; i <= G; ++i) {
        const double p = static_cast<double>(i) / G;
        for (int k = 1; k <= M; ++k) row[k] = p;
        if (best.offer(eval.evaluate_or_nan(model, arrival_prob, single))) best_p = p;
      }
      if (best.evaluated > 0) {
        out.params = {{"p", best_p}};
        out.policy = PreemptionPolicy::probabilistic(best_p, M);
      }
      break;
    }
    case PolicyKind::PacketAge: {
      double best_p1 = 0.0, best_p2 = 0.0;
      int best_split = 1;
      for (int i1 = 0; i1 <= G; ++i1) {
        const double p1 = static_cast<double>(i1) / G;
        for (int i2 = 0; i2 <= G; ++i2) {
          const double p2 = static_cast<double>(i2) / G;
          for (int split = 1; split <= M; ++split) {
            for (int k = 1; k <= M; ++k) row[k] = k < split ? p1 : p2;
            if (best.offer(eval.evaluate_or_nan(model, arrival_prob, single))) {
              best_p1 = p1;
              best_p2 = p2;
              best_split = split;
            }
          }
        }
      }
      if (best.evaluated > 0) {
        out.params = {{"p1", best_p1}, {"p2", best_p2}, {"delta", double(best_split)}};
        out.policy = PreemptionPolicy::packet_age(best_p1, best_p2, best_split, M);
      }
      break;
    }
    case PolicyKind::PacketSystemAge: {
      std::vector<int> thresholds{0, 1};
      std::vector<double> table(2 * (M + 1), 1.0);
      int bp[4] = {0, 0, 0, 0};
      int best_s1 = 1, best_s2 = 1, best_gamma = 1;
      for (int p1 = 0; p1 <= 1; ++p1)
        for (int p2 = 0; p2 <= 1; ++p2)
          for (int p3 = 0; p3 <= 1; ++p3)
            for (int p4 = 0; p4 <= 1; ++p4)
              for (int s1 = 1; s1 <= M; ++s1)
                for (int s2 = 1; s2 <= M; ++s2) {
                  table[0] = 1.0;
                  for (int k = 1; k <= M; ++k) table[k] = k < s1 ? p1 : p2;
                  table[M + 1] = 1.0;
                  for (int k = 1; k <= M; ++k) table[M + 1 + k] = k < s2 ? p3 : p4;
                  for (int gamma = 1; gamma <= 3 * M - 1; ++gamma) {
                    thresholds[1] = gamma;
                    const PolicyView view{thresholds, table.data(), 2, M};
                    if (best.offer(eval.evaluate_or_nan(model, arrival_prob, view))) {
                      bp[0] = p1;
                      bp[1] = p2;
                      bp[2] = p3;
                      bp[3] = p4;
                      best_s1 = s1;
                      best_s2 = s2;
                      best_gamma = gamma;
                    }
                  }
                }
      if (best.evaluated > 0) {
        out.params = {{"p1", double(bp[0])},     {"p2", double(bp[1])},
                      {"p3", double(bp[2])},     {"p4", double(bp[3])},
                      {"delta1", double(best_s1)}, {"delta2", double(best_s2)},
                      {"gamma", double(best_gamma)}};
        out.policy = PreemptionPolicy::packet_system_age(bp[0], bp[1], bp[2], bp[3], best_s1,
                                                         best_s2, best_gamma, M);
      }
      break;
    }
  }

  if (best.evaluated == 0)
    throw NumericalError("all-points-nonabsorbing",
                         "every grid point fails the absorption check");
  out.delta_bar = best.delta;
  out.evaluated = best.evaluated;
  out.skipped_nonabsorbing = best.skipped;
  return out;
}

namespace {

// Per-state policy enumeration used by the dominance check. Policies are a
// probability grid over every (region, row entry) pair; digit j of a point
// is entry j % (M+1) of region j / (M+1) + 1, and points are ranked by the
// row-major digit tuple. Enumeration keeps the final region's digits
// outermost so the fundamental-matrix factorization is reused across the
// whole inner block.
struct EnumBest {
  double delta = std::numeric_limits<double>::infinity();
  long long canon = -1;
  long long evaluated = 0;
  long long skipped = 0;
};

long long int_pow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void enumerate_outer_range(const DelayModel& model, double q, const std::vector<int>& thresholds,
                           int G, long long outer_lo, long long outer_hi, EnumBest& best) {
  const int M = model.max_age();
  const int N = static_cast<int>(thresholds.size());
  const int row_len = M + 1;
  const int inner_dims = (N - 1) * row_len;
  const long long outer_count = int_pow(G + 1, row_len);

  AoiEvaluator eval;
  eval.set_shape(model, thresholds);
  std::vector<double> table(static_cast<size_t>(N) * row_len, 0.0);
  std::vector<int> digits(std::max(inner_dims, 1), 0);

  for (long long outer = outer_lo; outer < outer_hi; ++outer) {
    // Decode the final region's row (entry 0 most significant).
    long long rem = outer;
    for (int pos = row_len - 1; pos >= 0; --pos) {
      table[static_cast<size_t>(N - 1) * row_len + pos] =
          static_cast<double>(rem % (G + 1)) / G;
      rem /= (G + 1);
    }
    eval.load_region(model, q, N, {table.data() + static_cast<size_t>(N - 1) * row_len,
                                   static_cast<size_t>(row_len)});

    std::fill(digits.begin(), digits.end(), 0);
    for (int r = 1; r < N; ++r) {
      for (int pos = 0; pos < row_len; ++pos)
        table[static_cast<size_t>(r - 1) * row_len + pos] = 0.0;
      eval.load_region(model, q, r, {table.data() + static_cast<size_t>(r - 1) * row_len,
                                     static_cast<size_t>(row_len)});
    }

    for (long long inner = 0;; ++inner) {
      const double d = eval.evaluate_loaded();
      if (std::isnan(d)) {
        ++best.skipped;
      } else {
        ++best.evaluated;
        const long long canon = inner * outer_count + outer;
        if (d < best.delta || (d == best.delta && canon < best.canon)) {
          best.delta = d;
          best.canon = canon;
        }
      }
      if (inner_dims == 0) break;
      int pos = inner_dims - 1;
      while (pos >= 0 && digits[pos] == G) {
        digits[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++digits[pos];
      // Every region owning a position >= pos changed; reload those rows.
      for (int r = pos / row_len + 1; r < N; ++r) {
        for (int p = 0; p < row_len; ++p)
          table[static_cast<size_t>(r - 1) * row_len + p] =
              static_cast<double>(digits[(r - 1) * row_len + p]) / G;
        eval.load_region(model, q, r, {table.data() + static_cast<size_t>(r - 1) * row_len,
                                       static_cast<size_t>(row_len)});
      }
    }
  }
}

EnumBest enumerate_grid(const DelayModel& model, double q, const std::vector<int>& thresholds,
                        int G, int threads) {
  const int M = model.max_age();
  const long long outer_count = int_pow(G + 1, M + 1);

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  nthreads = static_cast<int>(std::min<long long>(nthreads, outer_count));

  std::vector<EnumBest> partial(nthreads);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    const long long lo = outer_count * t / nthreads;
    const long long hi = outer_count * (t + 1) / nthreads;
    pool.emplace_back([&, t, lo, hi] {
      enumerate_outer_range(model, q, thresholds, G, lo, hi, partial[t]);
    });
  }
  for (auto& th : pool) th.join();

  EnumBest best;
  for (const auto& p : partial) {
    best.evaluated += p.evaluated;
    best.skipped += p.skipped;
    if (p.canon < 0) continue;
    if (p.delta < best.delta || (p.delta == best.delta && p.canon < best.canon)) {
      best.delta = p.delta;
      best.canon = p.canon;
    }
  }
  if (best.canon < 0)
    throw NumericalError("all-points-nonabsorbing",
                         "every enumerated policy fails the absorption check");
  return best;
}

PreemptionPolicy decode_policy(const DelayModel& model, const std::vector<int>& thresholds,
                               int G, long long canon) {
  const int M = model.max_age();
  const int N = static_cast<int>(thresholds.size());
  const int row_len = M + 1;
  std::vector<std::vector<double>> table(N, std::vector<double>(row_len));
  for (int j = N * row_len - 1; j >= 0; --j) {
    table[j / row_len][j % row_len] = static_cast<double>(canon % (G + 1)) / G;
    canon /= (G + 1);
  }
  return PreemptionPolicy(thresholds, table, M);
}

}  // namespace

DominanceReport check_deterministic_dominance(const DelayModel& model, double arrival_prob,
                                              double prob_grid_step, int delta_cap, int threads,
                                              long long max_points) {
  check_q(arrival_prob);
  const int G = grid_divisions(prob_grid_step);
  if (delta_cap < 1)
    throw ValidationError("invalid-parameter", "delta_cap must be >= 1");

  const int M = model.max_age();
  std::vector<int> thresholds{0};
  for (int t = 2; t <= delta_cap; ++t) thresholds.push_back(t);
  const int dims = static_cast<int>(thresholds.size()) * (M + 1);
  const double total = std::pow(static_cast<double>(G + 1), dims);
  if (total > static_cast<double>(max_points))
    throw ValidationError("search-space-too-large",
                          "policy grid has too many points; shrink max_age, delta_cap or the grid");

  const EnumBest det = enumerate_grid(model, arrival_prob, thresholds, 1, threads);
  const EnumBest rand = enumerate_grid(model, arrival_prob, thresholds, G, threads);

  DominanceReport report;
  report.holds = det.delta <= rand.delta + 1e-9;
  report.det_delta = det.delta;
  report.rand_delta = rand.delta;
  report.det_policy = decode_policy(model, thresholds, 1, det.canon);
  report.rand_policy = decode_policy(model, thresholds, G, rand.canon);
  report.evaluated = det.evaluated + rand.evaluated;
  report.skipped_nonabsorbing = det.skipped + rand.skipped;
  return report;
}

AlwaysPreemptReport check_always_preempt(const DelayModel& model, double arrival_prob) {
  check_q(arrival_prob);
  const HazardProfile profile = hazard_profile(model);
  AlwaysPreemptReport report;
  report.applicable =
      arrival_prob == 1.0 && profile != HazardProfile::IncreasingSomewhere;
  const double y0 = model.hazard(0);
  if (report.applicable && y0 == 0.0)
    throw NumericalError("degenerate-model",
                         "all hazards vanish; no transmission can ever complete");

  AoiEvaluator eval;
  const PreemptionPolicy ap = PreemptionPolicy::always_preempt(model.max_age());
  report.ap_delta = eval.evaluate(model, arrival_prob, ap.view());
  report.closed_form = y0 > 0.0 ? 1.0 + (1.0 - y0) / y0 : std::nan("");

  if (report.applicable) {
    report.optimal = true;
    for (PolicyKind kind :
         {PolicyKind::Probabilistic, PolicyKind::PacketAge, PolicyKind::PacketSystemAge}) {
      const OptResult r = grid_optimize(kind, model, arrival_prob, 0.25);
      if (r.delta_bar < report.ap_delta - 1e-9) report.optimal = false;
    }
  }
  return report;
}

}  // namespace aoiq
