#pragma once

#include <span>
#include <vector>

#include "aoiq/errors.hpp"

namespace aoiq {

/// Dense row-major matrix of doubles. Everything in this project is small
/// (a few hundred rows at most), so no attempt is made at sparsity.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double value = 0.0) { assign(rows, cols, value); }

  void assign(int rows, int cols, double value = 0.0) {
    if (rows <= 0 || cols <= 0)
      throw ValidationError("dimension-mismatch", "matrix dimensions must be positive");
    rows_ = rows;
    cols_ = cols;
    d_.assign(static_cast<size_t>(rows) * cols, value);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return d_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return d_[static_cast<size_t>(r) * cols_ + c]; }

  double* row(int r) { return d_.data() + static_cast<size_t>(r) * cols_; }
  const double* row(int r) const { return d_.data() + static_cast<size_t>(r) * cols_; }
  std::span<const double> row_span(int r) const { return {row(r), static_cast<size_t>(cols_)}; }

  std::vector<double>& data() { return d_; }
  const std::vector<double>& data() const { return d_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> d_;
};

double vec_sum(std::span<const double> v);
double vec_dot(std::span<const double> a, std::span<const double> b);

/// y = x * A for a row vector x (size A.rows()); y must not alias x.
void row_apply(std::span<const double> x, const Matrix& A, std::span<double> y);
/// y += x * A
void row_apply_add(std::span<const double> x, const Matrix& A, std::span<double> y);

/// S^n * v by n successive matrix-vector products. S^0 * v = v.
std::vector<double> power_apply(const Matrix& S, long long n, std::vector<double> v);

/// LU factorization with partial pivoting. Buffers are reused across
/// factorizations so the hot paths never allocate.
class LuSolver {
 public:
  /// Factor A. Throws NumericalError("singular-system") on a zero pivot.
  void factor(const Matrix& A);
  /// Factor (I - S). Returns false instead of throwing when singular.
  bool try_factor_identity_minus(const Matrix& S);
  void factor_identity_minus(const Matrix& S);

  /// In-place solve A x = b (b passed in x).
  void solve(std::span<double> x) const;
  /// In-place solve A^T x = b.
  void solve_transposed(std::span<double> x) const;

  int size() const { return n_; }

 private:
  bool factor_buffer();

  int n_ = 0;
  std::vector<double> lu_;
  std::vector<int> piv_;
};

/// x solving (I - S) x = v. Requires spectral radius of S below one.
std::vector<double> fundamental_apply(const Matrix& S, std::vector<double> v);

/// Stationary distribution of a row-stochastic matrix. States outside the
/// unique recurrent class get probability exactly zero. The class is found
/// by reachability on the support graph (entries > 0); the restricted
/// system (B^T - I) pi = 0 is then solved directly with one equation
/// replaced by normalization.
class StationarySolver {
 public:
  void solve(const Matrix& B, std::span<double> pi);

 private:
  std::vector<uint64_t> reach_;
  std::vector<int> klass_;
  std::vector<double> rhs_;
  Matrix sys_;
  LuSolver lu_;
};

std::vector<double> stationary_solve(const Matrix& B);

}  // namespace aoiq
