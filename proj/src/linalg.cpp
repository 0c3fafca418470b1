#include "aoiq/linalg.hpp"

#include <cmath>

namespace aoiq {

double vec_sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double vec_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void row_apply(std::span<const double> x, const Matrix& A, std::span<double> y) {
  if (static_cast<int>(x.size()) != A.rows() || static_cast<int>(y.size()) != A.cols())
    throw ValidationError("dimension-mismatch", "row_apply size mismatch");
  for (double& v : y) v = 0.0;
  row_apply_add(x, A, y);
}

void row_apply_add(std::span<const double> x, const Matrix& A, std::span<double> y) {
  const int cols = A.cols();
  for (int r = 0; r < A.rows(); ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    const double* arow = A.row(r);
    for (int c = 0; c < cols; ++c) y[c] += xr * arow[c];
  }
}

std::vector<double> power_apply(const Matrix& S, long long n, std::vector<double> v) {
  if (S.rows() != S.cols())
    throw ValidationError("dimension-mismatch", "power_apply needs a square matrix");
  if (static_cast<int>(v.size()) != S.cols())
    throw ValidationError("dimension-mismatch", "power_apply vector size mismatch");
  if (n < 0) throw ValidationError("invalid-parameter", "power_apply exponent must be >= 0");
  std::vector<double> tmp(v.size());
  for (long long k = 0; k < n; ++k) {
    for (int r = 0; r < S.rows(); ++r) tmp[r] = vec_dot(S.row_span(r), v);
    v.swap(tmp);
  }
  return v;
}

void LuSolver::factor(const Matrix& A) {
  if (A.rows() != A.cols())
    throw ValidationError("dimension-mismatch", "LU factorization needs a square matrix");
  n_ = A.rows();
  lu_.assign(A.data().begin(), A.data().end());
  piv_.resize(n_);
  if (!factor_buffer())
    throw NumericalError("singular-system", "zero pivot in LU factorization");
}

bool LuSolver::try_factor_identity_minus(const Matrix& S) {
  if (S.rows() != S.cols())
    throw ValidationError("dimension-mismatch", "LU factorization needs a square matrix");
  n_ = S.rows();
  lu_.resize(static_cast<size_t>(n_) * n_);
  piv_.resize(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      lu_[static_cast<size_t>(r) * n_ + c] = (r == c ? 1.0 : 0.0) - S(r, c);
  return factor_buffer();
}

void LuSolver::factor_identity_minus(const Matrix& S) {
  if (!try_factor_identity_minus(S))
    throw NumericalError("singular-system", "I - S is singular");
}

bool LuSolver::factor_buffer() {
  const int n = n_;
  double* lu = lu_.data();
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(lu[static_cast<size_t>(k) * n + k]);
    for (int r = k + 1; r < n; ++r) {
      const double cand = std::abs(lu[static_cast<size_t>(r) * n + k]);
      if (cand > best) {
        best = cand;
        p = r;
      }
    }
    if (best == 0.0 || !std::isfinite(best)) return false;
    piv_[k] = p;
    if (p != k)
      for (int c = 0; c < n; ++c)
        std::swap(lu[static_cast<size_t>(k) * n + c], lu[static_cast<size_t>(p) * n + c]);
    const double pivot = lu[static_cast<size_t>(k) * n + k];
    for (int r = k + 1; r < n; ++r) {
      const double m = lu[static_cast<size_t>(r) * n + k] / pivot;
      lu[static_cast<size_t>(r) * n + k] = m;
      if (m != 0.0)
        for (int c = k + 1; c < n; ++c)
          lu[static_cast<size_t>(r) * n + c] -= m * lu[static_cast<size_t>(k) * n + c];
    }
  }
  return true;
}

void LuSolver::solve(std::span<double> x) const {
  const int n = n_;
  if (static_cast<int>(x.size()) != n)
    throw ValidationError("dimension-mismatch", "solve vector size mismatch");
  const double* lu = lu_.data();
  for (int k = 0; k < n; ++k)
    if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
  for (int r = 1; r < n; ++r) {
    double s = x[r];
    const double* row = lu + static_cast<size_t>(r) * n;
    for (int c = 0; c < r; ++c) s -= row[c] * x[c];
    x[r] = s;
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = x[r];
    const double* row = lu + static_cast<size_t>(r) * n;
    for (int c = r + 1; c < n; ++c) s -= row[c] * x[c];
    x[r] = s / row[r];
  }
}

void LuSolver::solve_transposed(std::span<double> x) const {
  const int n = n_;
  if (static_cast<int>(x.size()) != n)
    throw ValidationError("dimension-mismatch", "solve vector size mismatch");
  const double* lu = lu_.data();
  // A = P^T L U, so A^T x = b solves U^T z = b, L^T w = z, x = P^T w.
  for (int r = 0; r < n; ++r) {
    double s = x[r];
    for (int c = 0; c < r; ++c) s -= lu[static_cast<size_t>(c) * n + r] * x[c];
    x[r] = s / lu[static_cast<size_t>(r) * n + r];
  }
  for (int r = n - 2; r >= 0; --r) {
    double s = x[r];
    for (int c = r + 1; c < n; ++c) s -= lu[static_cast<size_t>(c) * n + r] * x[c];
    x[r] = s;
  }
  for (int k = n - 1; k >= 0; --k)
    if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
}

std::vector<double> fundamental_apply(const Matrix& S, std::vector<double> v) {
  if (S.rows() != S.cols())
    throw ValidationError("dimension-mismatch", "fundamental_apply needs a square matrix");
  if (static_cast<int>(v.size()) != S.cols())
    throw ValidationError("dimension-mismatch", "fundamental_apply vector size mismatch");
  LuSolver lu;
  lu.factor_identity_minus(S);
  lu.solve(v);
  return v;
}

void StationarySolver::solve(const Matrix& B, std::span<double> pi) {
  const int m = B.rows();
  if (B.cols() != m) throw ValidationError("dimension-mismatch", "stationary matrix not square");
  if (static_cast<int>(pi.size()) != m)
    throw ValidationError("dimension-mismatch", "stationary output size mismatch");

  const int words = (m + 63) / 64;
  reach_.assign(static_cast<size_t>(m) * words, 0);
  auto bits = [&](int i) { return reach_.data() + static_cast<size_t>(i) * words; };
  auto test = [&](const uint64_t* row, int j) {
    return (row[j >> 6] >> (j & 63)) & 1u;
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (B(i, j) > 0.0) bits(i)[j >> 6] |= uint64_t{1} << (j & 63);

  // Transitive closure of the support graph.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < m; ++i) {
      uint64_t* ri = bits(i);
      for (int j = 0; j < m; ++j) {
        if (j == i || !test(ri, j)) continue;
        const uint64_t* rj = bits(j);
        for (int w = 0; w < words; ++w) {
          const uint64_t merged = ri[w] | rj[w];
          if (merged != ri[w]) {
            ri[w] = merged;
            changed = true;
          }
        }
      }
    }
  }

  // A state belongs to a sink class iff everything it reaches reaches back.
  klass_.clear();
  for (int i = 0; i < m; ++i) {
    bool sink = true;
    for (int j = 0; j < m && sink; ++j)
      if (test(bits(i), j) && !test(bits(j), i)) sink = false;
    if (sink) klass_.push_back(i);
  }
  if (klass_.empty())
    throw NumericalError("multiple-recurrent-classes", "no recurrent class detected");
  for (int s : klass_)
    if (s != klass_[0] && !test(bits(klass_[0]), s))
      throw NumericalError("multiple-recurrent-classes",
                           "matrix has more than one recurrent class");

  for (int s : klass_) {
    const double rowsum = vec_sum(B.row_span(s));
    if (std::abs(rowsum - 1.0) > 1e-10)
      throw ValidationError("invalid-parameter",
                            "matrix is not row-stochastic on its recurrent class");
  }

  const int k = static_cast<int>(klass_.size());
  for (double& p : pi) p = 0.0;
  if (k == 1) {
    pi[klass_[0]] = 1.0;
    return;
  }

  // (B^T - I) pi = 0 with the last equation replaced by normalization.
  sys_.assign(k, k, 0.0);
  for (int a = 0; a < k - 1; ++a)
    for (int b = 0; b < k; ++b)
      sys_(a, b) = B(klass_[b], klass_[a]) - (a == b ? 1.0 : 0.0);
  for (int b = 0; b < k; ++b) sys_(k - 1, b) = 1.0;
  rhs_.assign(k, 0.0);
  rhs_[k - 1] = 1.0;
  lu_.factor(sys_);
  lu_.solve(rhs_);

  double total = 0.0;
  for (double& p : rhs_) {
    if (p < 0.0) {
      if (p < -1e-10)
        throw NumericalError("singular-system", "stationary solve produced negative mass");
      p = 0.0;
    }
    total += p;
  }
  for (int b = 0; b < k; ++b) pi[klass_[b]] = rhs_[b] / total;

  double resid = 0.0;
  for (int j = 0; j < m; ++j) {
    double s = -pi[j];
    for (int i = 0; i < m; ++i) s += pi[i] * B(i, j);
    resid = std::max(resid, std::abs(s));
  }
  if (resid > 1e-10)
    throw NumericalError("singular-system", "stationary residual exceeds tolerance");
}

std::vector<double> stationary_solve(const Matrix& B) {
  std::vector<double> pi(B.rows());
  StationarySolver solver;
  solver.solve(B, pi);
  return pi;
}

}  // namespace aoiq
