#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kenmotsu/chart.hpp"
#include "kenmotsu/errors.hpp"
#include "kenmotsu/examples.hpp"
#include "kenmotsu/tensor.hpp"
#include "oracles.hpp"

#include <random>

using namespace kenmotsu;

TEST_CASE("construction validates component count and rank") {
  CHECK_THROWS_AS(MultiTensor(3, covariant(2), std::vector<double>(8)), Error);
  CHECK_THROWS_AS(MultiTensor(2, covariant(7)), RankError);
  const MultiTensor t(3, covariant(3));
  CHECK(t.size() == 27);
  CHECK(t.rank() == 3);
  CHECK(MultiTensor::scalar(3, 2.5).value() == 2.5);
  CHECK_THROWS_AS(t.value(), RankError);
}

TEST_CASE("contract: trace of the identity is the dimension") {
  CHECK(contract(MultiTensor::identity(3), 0, 1).value() == 3.0);
}

TEST_CASE("contract: inner pair of delta (x) delta is delta") {
  const MultiTensor dd = outer(MultiTensor::identity(3), MultiTensor::identity(3));  // [a, b, c, d]
  const MultiTensor c = contract(dd, 2, 1);
  CHECK(c.variance() == Variance{Slot::Up, Slot::Down});
  CHECK(max_abs(c - MultiTensor::identity(3)) == 0.0);
}

TEST_CASE("contract: h3 curvature traced over (l, i) gives -2 g") {
  const auto ex = find_example("h3").value();
  const Point p{0.1, 0.2, 0.3};
  const MultiTensor R = riemann(ex.manifold, p, {});
  const MultiTensor traced = contract(R, 0, 2);  // [k, j]
  const MultiTensor g = oracle::diag_metric(oracle::hyperbolic_diag(p));
  CHECK(max_abs(traced - (-2.0) * g) < 1e-8);
}

TEST_CASE("contract rejects mismatched or out-of-range slots") {
  const MultiTensor t(3, covariant(2));
  CHECK_THROWS_AS(contract(t, 0, 1), SlotError);
  CHECK_THROWS_AS(contract(MultiTensor::identity(3), 0, 0), SlotError);
  CHECK_THROWS_AS(contract(MultiTensor::identity(3), 0, 5), SlotError);
  CHECK_THROWS_AS(contract(MultiTensor::identity(3), 1, 0), SlotError);
}

TEST_CASE("lower xi with the h3 metric gives eta") {
  const auto ex = find_example("h3").value();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Point p{0.3 * trial - 1.0, 0.1 * trial, 0.05 * trial - 0.25};
    const MetricPair g = ex.manifold.metric_pair(p);
    CHECK(max_abs(lower(ex.structure.xi(p), 0, g) - ex.structure.eta(p)) < 1e-15);
  }
}

TEST_CASE("raising the h3 Ricci tensor gives Q = -2 I") {
  const auto ex = find_example("h3").value();
  const Point p{0.4, -0.3, 0.2};
  const MetricPair g = ex.manifold.metric_pair(p);
  const MultiTensor S = ricci(ex.manifold, p, {});
  const MultiTensor Q = raise(S, 0, g);  // [a, k] = g^{aj} S_jk
  CHECK(max_abs(Q - (-2.0) * MultiTensor::identity(3)) < 1e-8);
}

TEST_CASE("raise/lower reject the wrong slot kind") {
  std::mt19937_64 rng(1);
  const MetricPair g = MetricPair::from_lower(oracle::random_metric(rng, 3));
  CHECK_THROWS_AS(lower(MultiTensor(3, covariant(2)), 0, g), SlotError);
  CHECK_THROWS_AS(raise(MultiTensor(3, contravariant(1)), 0, g), SlotError);
  CHECK_THROWS_AS(raise(MultiTensor(3, covariant(1)), 2, g), SlotError);
}

TEST_CASE("property: lower(raise(t)) = t for random tensors and metrics, dims 3 and 5") {
  std::mt19937_64 rng(2024);
  for (std::size_t dim : {3u, 5u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const MetricPair g = MetricPair::from_lower(oracle::random_metric(rng, dim));
      const MultiTensor t = oracle::random_tensor(rng, dim, covariant(2));
      for (std::size_t slot = 0; slot < 2; ++slot) CHECK(max_abs(lower(raise(t, slot, g), slot, g) - t) < 1e-10);
    }
  }
}

TEST_CASE("property: contraction is linear") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Variance v{Slot::Up, Slot::Down, Slot::Down, Slot::Up};
  for (int trial = 0; trial < 50; ++trial) {
    const MultiTensor t1 = oracle::random_tensor(rng, 3, v);
    const MultiTensor t2 = oracle::random_tensor(rng, 3, v);
    const double a = u(rng), b = u(rng);
    const MultiTensor lhs = contract(a * t1 + b * t2, 0, 2);
    const MultiTensor rhs = a * contract(t1, 0, 2) + b * contract(t2, 0, 2);
    CHECK(max_abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("property: disjoint contractions commute") {
  std::mt19937_64 rng(11);
  const Variance v{Slot::Up, Slot::Down, Slot::Up, Slot::Down};
  for (int trial = 0; trial < 30; ++trial) {
    const MultiTensor t = oracle::random_tensor(rng, 5, v);
    // (0,1) then (2,3) -> after the first, slots 2,3 become 0,1.
    const double first = contract(contract(t, 0, 1), 0, 1).value();
    const double second = contract(contract(t, 2, 3), 0, 1).value();
    CHECK(first == doctest::Approx(second).epsilon(1e-12));
  }
}

TEST_CASE("max_abs and signed_extreme") {
  CHECK(max_abs(MultiTensor(3, covariant(3))) == 0.0);
  MultiTensor t(3, covariant(2));
  t(1, 2) = -7.5;
  t(0, 0) = 3.0;
  CHECK(max_abs(t) == 7.5);
  CHECK(signed_extreme(t) == -7.5);
}

TEST_CASE("MetricPair rejects asymmetric and indefinite metrics") {
  MultiTensor g = oracle::diag_metric({1.0, 1.0, 1.0});
  g(0, 1) = 1e-6;
  CHECK_THROWS_AS(MetricPair::from_lower(g), DegenerateMetricError);
  CHECK_THROWS_AS(MetricPair::from_lower(oracle::diag_metric({1.0, -1.0, 1.0})), DegenerateMetricError);
  CHECK_THROWS_AS(MetricPair::from_lower(oracle::diag_metric({1.0, 0.0, 1.0})), DegenerateMetricError);
}

TEST_CASE("MetricPair: lower . upper = identity") {
  std::mt19937_64 rng(5);
  const MetricPair g = MetricPair::from_lower(oracle::random_metric(rng, 5));
  const MultiTensor prod = contract(outer(g.lower(), g.upper()), 2, 1);  // [i, k] (_,^)
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(prod(i, k) - (i == k ? 1.0 : 0.0)) < 1e-10);
}

TEST_CASE("permute reorders slots and variance") {
  MultiTensor t(3, {Slot::Up, Slot::Down});
  t(0, 2) = 4.0;
  const std::array<std::size_t, 2> swap{1, 0};
  const MultiTensor p = permute(t, swap);
  CHECK(p.variance() == Variance{Slot::Down, Slot::Up});
  CHECK(p(2, 0) == 4.0);
}
