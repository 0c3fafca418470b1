#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "aoiq/linalg.hpp"
#include "doctest.h"

using namespace aoiq;

namespace {

Matrix identity(int n) {
  Matrix m(n, n, 0.0);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix all_rows(int n, std::vector<double> row) {
  Matrix m(n, static_cast<int>(row.size()), 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = row[c];
  return m;
}

}  // namespace

TEST_CASE("power_apply basics") {
  CHECK(power_apply(identity(3), 7, {1, 2, 3}) == std::vector<double>{1, 2, 3});
  Matrix half(1, 1, 0.5);
  CHECK(power_apply(half, 3, {1})[0] == doctest::Approx(0.125).epsilon(1e-12));
  const auto v = power_apply(all_rows(3, {0.5, 0.0, 0.0}), 2, {1, 1, 1});
  for (double x : v) CHECK(x == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(power_apply(identity(3), 2, {1, 2}), ValidationError);
}

TEST_CASE("power_apply composes additively in the exponent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 0.3);
  Matrix S(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) S(r, c) = unit(rng);
  const std::vector<double> v{1, -2, 0.5, 3};
  const auto lhs = power_apply(S, 5, v);
  const auto rhs = power_apply(S, 2, power_apply(S, 3, v));
  for (int i = 0; i < 4; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
}

TEST_CASE("fundamental_apply solves the geometric series") {
  Matrix half(1, 1, 0.5);
  CHECK(fundamental_apply(half, {1})[0] == doctest::Approx(2.0).epsilon(1e-12));
  Matrix zero(3, 3, 0.0);
  CHECK(fundamental_apply(zero, {4, 5, 6}) == std::vector<double>{4, 5, 6});
  const auto x = fundamental_apply(all_rows(3, {0.5, 0.0, 0.0}), {1, 1, 1});
  for (double v : x) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fundamental_apply flags a singular system") {
  CHECK_THROWS_AS(fundamental_apply(identity(2), {1, 1}), NumericalError);
}

TEST_CASE("fundamental_apply matches the truncated Neumann sum") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + int(rng() % 4);
    Matrix S(n, n);
    for (int r = 0; r < n; ++r) {
      double sum = 0.0;
      for (int c = 0; c < n; ++c) {
        S(r, c) = unit(rng);
        sum += S(r, c);
      }
      const double scale = 0.8 * unit(rng) / sum;  // strictly substochastic
      for (int c = 0; c < n; ++c) S(r, c) *= scale;
    }
    std::vector<double> v(n, 1.0);
    std::vector<double> acc(n, 0.0), term(n, 1.0);
    double mass = 1.0;
    while (mass > 1e-13) {
      for (int i = 0; i < n; ++i) acc[i] += term[i];
      term = power_apply(S, 1, term);
      mass = 0.0;
      for (double t : term) mass = std::max(mass, std::abs(t));
    }
    const auto x = fundamental_apply(S, v);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(acc[i]).epsilon(1e-10));
  }
}

TEST_CASE("lu transpose solve") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + int(rng() % 5);
    Matrix A(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) A(r, c) = unit(rng) + (r == c ? 3.0 : 0.0);
    LuSolver lu;
    lu.factor(A);
    std::vector<double> b(n), x(n);
    for (double& v : b) v = unit(rng);
    x = b;
    lu.solve_transposed(x);
    // check A^T x = b
    for (int c = 0; c < n; ++c) {
      double s = 0.0;
      for (int r = 0; r < n; ++r) s += A(r, c) * x[r];
      CHECK(s == doctest::Approx(b[c]).epsilon(1e-10));
    }
  }
}

TEST_CASE("stationary distribution of tiny chains") {
  Matrix swap(2, 2, 0.0);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  auto pi = stationary_solve(swap);
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));

  Matrix funnel(2, 2, 0.0);
  funnel(0, 0) = 1.0;
  funnel(1, 0) = 1.0;
  pi = stationary_solve(funnel);
  CHECK(pi[0] == 1.0);
  CHECK(pi[1] == 0.0);  // transient state gets exactly zero

  const auto rank_one = all_rows(2, {2.0 / 3.0, 1.0 / 3.0});
  pi = stationary_solve(rank_one);
  CHECK(pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("stationary postconditions on random chains") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + int(rng() % 6);
    Matrix B(n, n);
    for (int r = 0; r < n; ++r) {
      double sum = 0.0;
      for (int c = 0; c < n; ++c) {
        B(r, c) = unit(rng);
        sum += B(r, c);
      }
      for (int c = 0; c < n; ++c) B(r, c) /= sum;
    }
    const auto pi = stationary_solve(B);
    double total = 0.0;
    for (double p : pi) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (int c = 0; c < n; ++c) {
      double s = -pi[c];
      for (int r = 0; r < n; ++r) s += pi[r] * B(r, c);
      CHECK(std::abs(s) <= 1e-10);
    }
  }
}

TEST_CASE("stationary rejects two recurrent classes") {
  Matrix B(2, 2, 0.0);
  B(0, 0) = 1.0;
  B(1, 1) = 1.0;
  CHECK_THROWS_AS(stationary_solve(B), NumericalError);
}
