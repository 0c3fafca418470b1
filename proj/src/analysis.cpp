#include "aoiq/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace aoiq {

namespace {

void check_gamma(const PreemptionPolicy& policy, int gamma) {
  if (gamma < 1 || gamma > policy.max_age())
    throw ValidationError("gamma-out-of-range", "start age must be in 1..max_age");
}

std::vector<RegionMatrices> build_all_regions(const EvaluationScenario& sc) {
  std::vector<RegionMatrices> regions;
  regions.reserve(sc.policy.regions());
  for (int i = 1; i <= sc.policy.regions(); ++i)
    regions.push_back(build_region_matrices(sc, i));
  return regions;
}

std::vector<double> start_vector(int max_age) {
  std::vector<double> v(max_age + 1, 0.0);
  v[max_age] = 1.0;  // cycles begin idle
  return v;
}

void step(std::vector<double>& v, const Matrix& S, std::vector<double>& scratch) {
  row_apply(v, S, scratch);
  v.swap(scratch);
}

}  // namespace

CycleOffsets cycle_offsets(const PreemptionPolicy& policy, int gamma) {
  check_gamma(policy, gamma);
  const int n = policy.regions();
  CycleOffsets out;
  out.gamma = gamma;
  out.shifted.resize(n);
  out.gaps.resize(n);
  for (int i = 0; i < n; ++i) out.shifted[i] = std::max(policy.threshold(i) - gamma, 0);
  out.gaps[0] = 0;
  for (int i = 1; i < n; ++i) out.gaps[i] = out.shifted[i] - out.shifted[i - 1];
  return out;
}

double tail_tau(const EvaluationScenario& sc, int gamma, long long n) {
  check_gamma(sc.policy, gamma);
  if (n < 0) throw ValidationError("invalid-parameter", "horizon must be >= 0");
  const auto regions = build_all_regions(sc);
  validate_absorbing(regions.back());
  if (n == 0) return 1.0;

  const auto off = cycle_offsets(sc.policy, gamma);
  const int N = sc.policy.regions();
  // Region holding step n: shifted[i-1] < n <= shifted[i], unbounded last.
  int i = N;
  for (int r = 1; r < N; ++r) {
    if (n <= off.shifted[r]) {
      i = r;
      break;
    }
  }
  std::vector<double> v = start_vector(sc.model.max_age());
  std::vector<double> scratch(v.size());
  for (int r = 1; r < i; ++r)
    for (int k = 0; k < off.gaps[r]; ++k) step(v, regions[r - 1].transient, scratch);
  const long long within = n - off.shifted[i - 1];
  for (long long k = 0; k < within; ++k) step(v, regions[i - 1].transient, scratch);
  return vec_sum(v);
}

std::pair<double, double> moments_tau(const EvaluationScenario& sc, int gamma) {
  check_gamma(sc.policy, gamma);
  const auto regions = build_all_regions(sc);
  validate_absorbing(regions.back());
  const auto off = cycle_offsets(sc.policy, gamma);
  const int N = sc.policy.regions();

  std::vector<double> v = start_vector(sc.model.max_age());
  std::vector<double> scratch(v.size());
  double sum_tail = 0.0;      // sum over finite-region steps of P(tau > n)
  double sum_n_tail = 0.0;    // same weighted by the step index n
  long long n = 0;
  for (int r = 1; r < N; ++r) {
    for (int k = 0; k < off.gaps[r]; ++k) {
      step(v, regions[r - 1].transient, scratch);
      ++n;
      const double tail = vec_sum(v);
      sum_tail += tail;
      sum_n_tail += static_cast<double>(n) * tail;
    }
  }

  // Final region: geometric continuation through the fundamental matrix.
  const Matrix& last = regions[N - 1].transient;
  LuSolver lu;
  lu.factor_identity_minus(last);
  std::vector<double> x1(v.size(), 1.0);
  lu.solve(x1);
  std::vector<double> x2 = x1;
  lu.solve(x2);
  row_apply(v, last, scratch);  // v * S_last
  const double t1 = vec_dot(scratch, x1);
  const double t2 = vec_dot(scratch, x2);

  const double m1 = 1.0 + sum_tail + t1;
  const double m2 = m1 + 2.0 * t2 + 2.0 * static_cast<double>(n) * t1 + 2.0 * sum_n_tail;
  return {m1, m2};
}

std::pair<double, double> moments_tau_truncated(const EvaluationScenario& sc, int gamma,
                                                double tol, long long max_terms) {
  check_gamma(sc.policy, gamma);
  if (!(tol > 0.0)) throw ValidationError("invalid-parameter", "tolerance must be positive");
  const auto regions = build_all_regions(sc);
  validate_absorbing(regions.back());
  const auto off = cycle_offsets(sc.policy, gamma);
  const int N = sc.policy.regions();
  const long long final_start = off.shifted[N - 1];  // steps beyond this use the last region

  std::vector<double> v = start_vector(sc.model.max_age());
  std::vector<double> scratch(v.size());
  double m1 = 1.0;  // P(tau > 0)
  double weighted = 0.0;
  int region = 1;
  for (long long k = 1; k <= max_terms; ++k) {
    while (region < N && k > off.shifted[region]) ++region;
    step(v, regions[region - 1].transient, scratch);
    const double tail = vec_sum(v);
    m1 += tail;
    const double term = static_cast<double>(k) * tail;
    weighted += term;
    if (k > final_start && term < tol) return {m1, m1 + 2.0 * weighted};
  }
  throw NumericalError("no-convergence", "truncated moment sum did not converge");
}

ResetDistribution reset_matrix(const EvaluationScenario& sc) {
  const auto regions = build_all_regions(sc);
  validate_absorbing(regions.back());
  const int M = sc.model.max_age();
  const int N = sc.policy.regions();

  const Matrix& lastS = regions[N - 1].transient;
  const Matrix& lastA = regions[N - 1].absorb;
  LuSolver lu;
  lu.factor_identity_minus(lastS);
  // C = (I - S_last)^{-1} A_last, reused by every row.
  Matrix C(M + 1, M, 0.0);
  std::vector<double> col(M + 1);
  for (int j = 0; j < M; ++j) {
    for (int r = 0; r <= M; ++r) col[r] = lastA(r, j);
    lu.solve(col);
    for (int r = 0; r <= M; ++r) C(r, j) = col[r];
  }

  ResetDistribution out;
  out.B.assign(M, M, 0.0);
  std::vector<double> v(M + 1), scratch(M + 1), row(M);
  for (int gamma = 1; gamma <= M; ++gamma) {
    const auto off = cycle_offsets(sc.policy, gamma);
    v.assign(M + 1, 0.0);
    v[M] = 1.0;
    std::fill(row.begin(), row.end(), 0.0);
    for (int r = 1; r < N; ++r) {
      for (int k = 0; k < off.gaps[r]; ++k) {
        row_apply_add(v, regions[r - 1].absorb, row);
        step(v, regions[r - 1].transient, scratch);
      }
    }
    row_apply_add(v, C, row);
    for (int j = 0; j < M; ++j) out.B(gamma - 1, j) = row[j];
  }
  out.pi = stationary_solve(out.B);
  return out;
}

AoiReport average_aoi(const EvaluationScenario& sc) {
  AoiEvaluator eval;
  eval.evaluate(sc);
  AoiReport report;
  report.delta_bar = eval.delta_bar();
  report.reset.B = eval.reset_B();
  report.reset.pi = eval.pi();
  report.m1 = eval.m1();
  report.m2 = eval.m2();
  return report;
}

void AoiEvaluator::set_shape(const DelayModel& model, std::span<const int> thresholds) {
  const int M = model.max_age();
  const int N = static_cast<int>(thresholds.size());
  thresholds_.assign(thresholds.begin(), thresholds.end());
  if (M != max_age_ || N != regions_) {
    max_age_ = M;
    regions_ = N;
    S_.resize(N);
    A_.resize(N);
    for (int r = 0; r < N; ++r) {
      S_[r].assign(M + 1, M + 1, 0.0);
      A_[r].assign(M + 1, M, 0.0);
    }
    C_.assign(M + 1, M, 0.0);
    B_.assign(M, M, 0.0);
    x1_.resize(M + 1);
    x2_.resize(M + 1);
    v_.resize(M + 1);
    vnext_.resize(M + 1);
    u_.resize(M + 1);
    brow_.resize(M);
    m1_.resize(M);
    m2_.resize(M);
    pi_.resize(M);
  }
  last_dirty_ = true;
}

void AoiEvaluator::load_region(const DelayModel& model, double arrival_prob, int region,
                               std::span<const double> row) {
  detail::fill_region_matrices(model, arrival_prob, row, S_[region - 1], A_[region - 1]);
  if (region == regions_) last_dirty_ = true;
}

double AoiEvaluator::evaluate_or_nan(const DelayModel& model, double arrival_prob,
                                     const PolicyView& policy) noexcept {
  set_shape(model, policy.thresholds);
  for (int r = 1; r <= regions_; ++r) load_region(model, arrival_prob, r, policy.row(r));
  return evaluate_loaded();
}

double AoiEvaluator::evaluate(const DelayModel& model, double arrival_prob,
                              const PolicyView& policy) {
  const double d = evaluate_or_nan(model, arrival_prob, policy);
  if (std::isnan(d))
    throw NumericalError("nonabsorbing",
                         "final region does not absorb; every cycle would last forever");
  return d;
}

double AoiEvaluator::evaluate(const EvaluationScenario& sc) {
  return evaluate(sc.model, sc.arrival_prob, sc.policy.view());
}

double AoiEvaluator::evaluate_loaded() noexcept { return run(); }

double AoiEvaluator::run() noexcept {
  const int M = max_age_;
  const int N = regions_;
  const Matrix& lastS = S_[N - 1];
  const Matrix& lastA = A_[N - 1];

  if (last_dirty_) {
    if (!lu_.try_factor_identity_minus(lastS)) return std::nan("");
    for (int r = 0; r <= M; ++r) x1_[r] = 1.0;
    lu_.solve(x1_);
    double norm = 1.0;
    for (double v : x1_) {
      if (!std::isfinite(v) || v < 1.0 - 1e-9) return std::nan("");
      norm = std::max(norm, std::abs(v));
    }
    for (int r = 0; r <= M; ++r) {
      double s = x1_[r] - 1.0;
      const double* srow = lastS.row(r);
      for (int c = 0; c <= M; ++c) s -= srow[c] * x1_[c];
      if (std::abs(s) > 1e-8 * norm) return std::nan("");
    }
    for (int r = 0; r <= M; ++r) x2_[r] = x1_[r];
    lu_.solve(x2_);
    for (int j = 0; j < M; ++j) {
      for (int r = 0; r <= M; ++r) u_[r] = lastA(r, j);
      lu_.solve(u_);
      for (int r = 0; r <= M; ++r) C_(r, j) = u_[r];
    }
    last_dirty_ = false;
  }

  for (int gamma = 1; gamma <= M; ++gamma) {
    for (int r = 0; r <= M; ++r) v_[r] = 0.0;
    v_[M] = 1.0;
    for (int j = 0; j < M; ++j) brow_[j] = 0.0;
    double sum_tail = 0.0;
    double sum_n_tail = 0.0;
    int n = 0;
    int prev_shift = 0;
    for (int r = 1; r < N; ++r) {
      const int shift = std::max(thresholds_[r] - gamma, 0);
      const int gap = shift - prev_shift;
      prev_shift = shift;
      for (int k = 0; k < gap; ++k) {
        row_apply_add(v_, A_[r - 1], brow_);
        row_apply(v_, S_[r - 1], vnext_);
        v_.swap(vnext_);
        ++n;
        const double tail = vec_sum(v_);
        sum_tail += tail;
        sum_n_tail += static_cast<double>(n) * tail;
      }
    }
    row_apply(v_, lastS, u_);
    const double t1 = vec_dot(u_, x1_);
    const double t2 = vec_dot(u_, x2_);
    const double m1 = 1.0 + sum_tail + t1;
    m1_[gamma - 1] = m1;
    m2_[gamma - 1] = m1 + 2.0 * t2 + 2.0 * static_cast<double>(n) * t1 + 2.0 * sum_n_tail;
    row_apply_add(v_, C_, brow_);
    for (int j = 0; j < M; ++j) B_(gamma - 1, j) = brow_[j];
  }

  try {
    stationary_.solve(B_, pi_);
  } catch (const Error&) {
    return std::nan("");
  }

  double num = 0.0;
  double den = 0.0;
  for (int gamma = 1; gamma <= M; ++gamma) {
    const double p = pi_[gamma - 1];
    num += p * (2.0 * gamma * m1_[gamma - 1] + m2_[gamma - 1]);
    den += p * m1_[gamma - 1];
  }
  delta_bar_ = num / (2.0 * den) - 0.5;
  return delta_bar_;
}

}  // namespace aoiq
