#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "aoiq/amc.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace aoiq;

namespace {

EvaluationScenario geometric_scenario(PreemptionPolicy policy, double y, double q) {
  return EvaluationScenario(DelayModel::geometric(y, policy.max_age()), std::move(policy), q);
}

}  // namespace

TEST_CASE("always preempt at q = 1 pins fresh transmissions everywhere") {
  const auto sc = geometric_scenario(PreemptionPolicy::always_preempt(2), 0.5, 1.0);
  const auto m = build_region_matrices(sc, 1);
  for (int r = 0; r < 3; ++r) {
    CHECK(m.transient(r, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.transient(r, 1) == 0.0);
    CHECK(m.transient(r, 2) == 0.0);
    CHECK(m.absorb(r, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.absorb(r, 1) == 0.0);
  }
}

TEST_CASE("never-preempt policy routes mass along the age ladder") {
  const auto sc =
      geometric_scenario(PreemptionPolicy({0}, {{1.0, 0.0, 0.0}}, 2), 0.5, 1.0);
  const auto m = build_region_matrices(sc, 1);
  // transient rows: age1 -> age2, age2 -> idle, idle -> age1
  CHECK(m.transient(0, 0) == 0.0);
  CHECK(m.transient(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.transient(0, 2) == 0.0);
  CHECK(m.transient(1, 0) == 0.0);
  CHECK(m.transient(1, 1) == 0.0);
  CHECK(m.transient(1, 2) == 1.0);
  CHECK(m.transient(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.transient(2, 1) == 0.0);
  CHECK(m.transient(2, 2) == 0.0);
  CHECK(m.absorb(0, 0) == 0.0);
  CHECK(m.absorb(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.absorb(1, 0) == 0.0);
  CHECK(m.absorb(1, 1) == 0.0);
  CHECK(m.absorb(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.absorb(2, 1) == 0.0);
}

TEST_CASE("no arrivals closes the idle state") {
  const auto sc = geometric_scenario(PreemptionPolicy::always_preempt(2), 0.5, 0.0);
  const auto m = build_region_matrices(sc, 1);
  CHECK(m.transient(2, 0) == 0.0);
  CHECK(m.transient(2, 1) == 0.0);
  CHECK(m.transient(2, 2) == 1.0);
}

TEST_CASE("region index bounds") {
  const auto sc = geometric_scenario(PreemptionPolicy::always_preempt(2), 0.5, 1.0);
  CHECK_THROWS_AS(build_region_matrices(sc, 0), ValidationError);
  CHECK_THROWS_AS(build_region_matrices(sc, 2), ValidationError);
}

TEST_CASE("absorption validation") {
  CHECK(is_absorbing(
      build_region_matrices(geometric_scenario(PreemptionPolicy::always_preempt(2), 0.5, 1.0), 1)));
  CHECK_FALSE(is_absorbing(
      build_region_matrices(geometric_scenario(PreemptionPolicy::always_preempt(2), 0.5, 0.0), 1)));
  // hazards identically zero: nothing can ever complete
  const EvaluationScenario dead(DelayModel({0.0, 0.0}), PreemptionPolicy::always_preempt(2), 0.5);
  CHECK_FALSE(is_absorbing(build_region_matrices(dead, 1)));
  CHECK_THROWS_AS(validate_absorbing(build_region_matrices(dead, 1)), NumericalError);
}

TEST_CASE("row sums of the two blocks always add to one") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sc = testing::random_scenario(rng, 1 + int(rng() % 6), 1 + int(rng() % 3));
    for (int region = 1; region <= sc.policy.regions(); ++region) {
      const auto m = build_region_matrices(sc, region);
      for (int r = 0; r < m.transient.rows(); ++r) {
        double sum = 0.0;
        for (int c = 0; c < m.transient.cols(); ++c) sum += m.transient(r, c);
        for (int c = 0; c < m.absorb.cols(); ++c) sum += m.absorb(r, c);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("sparsity stencil has exact zeros off the pattern") {
  std::mt19937_64 rng(405);
  for (int trial = 0; trial < 20; ++trial) {
    const int M = 2 + int(rng() % 5);
    const auto sc = testing::random_scenario(rng, M, 1 + int(rng() % 2));
    const auto m = build_region_matrices(sc, 1);
    for (int r = 0; r <= M; ++r) {
      for (int c = 0; c <= M; ++c) {
        const bool fresh = c == 0;
        const bool ladder = r < M - 1 && c == r + 1;
        const bool to_idle = (r == M - 1 || r == M) && c == M;
        if (!fresh && !ladder && !to_idle) CHECK(m.transient(r, c) == 0.0);
      }
      for (int c = 0; c < M; ++c) {
        const bool fresh = c == 0;
        const bool ladder = r < M - 1 && c == r + 1;
        if (!fresh && !ladder) CHECK(m.absorb(r, c) == 0.0);
      }
    }
  }
}

TEST_CASE("raising a preemption probability moves mass to the fresh column") {
  const DelayModel model = DelayModel::geometric(0.3, 3);
  const double q = 0.8;
  for (double lo : {0.0, 0.25, 0.5}) {
    const double hi = lo + 0.4;
    const EvaluationScenario a(model, PreemptionPolicy({0}, {{1.0, lo, lo, lo}}, 3), q);
    const EvaluationScenario b(model, PreemptionPolicy({0}, {{1.0, hi, hi, hi}}, 3), q);
    const auto ma = build_region_matrices(a, 1);
    const auto mb = build_region_matrices(b, 1);
    for (int r = 0; r < 3; ++r) {
      CHECK(mb.transient(r, 0) > ma.transient(r, 0));
      CHECK(mb.absorb(r, 0) > ma.absorb(r, 0));
      if (r + 1 <= 3) {
        CHECK(mb.transient(r, r + 1) <= ma.transient(r, r + 1));
      }
      double sa = 0.0, sb = 0.0;
      for (int c = 0; c < 4; ++c) {
        sa += ma.transient(r, c);
        sb += mb.transient(r, c);
      }
      for (int c = 0; c < 3; ++c) {
        sa += ma.absorb(r, c);
        sb += mb.absorb(r, c);
      }
      CHECK(sa == doctest::Approx(sb).epsilon(1e-12));
    }
  }
}
