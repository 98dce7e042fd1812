#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ordcone/errors.hpp"
#include "ordcone/transport.hpp"
#include "test_support.hpp"

namespace ordcone {
namespace {

using testing::gen_dyadic_measure;
using testing::q;
using testing::scalar;
using testing::scalar_measure;
using testing::scalar_tuple;

constexpr double kE = std::numbers::e;

double oracle_w1(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  const std::uint64_t scale = checked_lcm(a.common_denominator(), b.common_denominator());
  std::vector<std::int64_t> supply, demand;
  for (const auto& w : a.weights()) supply.push_back(static_cast<std::int64_t>(scaled_integer(w, scale)));
  for (const auto& w : b.weights()) demand.push_back(static_cast<std::int64_t>(scaled_integer(w, scale)));
  std::vector<double> cost;
  for (const auto& x : a.points())
    for (const auto& y : b.points()) cost.push_back(thompson_dist(x, y));
  return oracle::transport_by_vertices(supply, demand, cost);
}

TEST(Wasserstein1, DiracPairUsesTheOnlyCoupling) {
  const PDMatrix x = PDMatrix::diagonal({1.0, 2.0}), y = PDMatrix::diagonal({3.0, 0.5});
  const auto plan = wasserstein1(dirac(x), dirac(y));
  EXPECT_DOUBLE_EQ(plan.cost, thompson_dist(x, y));
  ASSERT_EQ(plan.coupling.arcs().size(), 1u);
  EXPECT_EQ(plan.coupling.arcs()[0], (Arc{0, 0, q(1)}));
}

TEST(Wasserstein1, SelfDistanceIsZero) {
  Rng rng(41);
  const auto m = gen_dyadic_measure(rng, 3, 4);
  EXPECT_EQ(wasserstein1(m, m).cost, 0.0);
}

TEST(Wasserstein1, ScalarExamples) {
  const auto a = scalar_measure({1.0, kE}, {q(1, 2), q(1, 2)});
  const auto b = scalar_measure({kE, kE * kE}, {q(1, 2), q(1, 2)});
  EXPECT_NEAR(wasserstein1(a, b).cost, 1.0, 1e-12);
  const auto c = scalar_measure({1.0, kE}, {q(3, 4), q(1, 4)});
  EXPECT_NEAR(wasserstein1(c, dirac(scalar(kE))).cost, 0.75, 1e-12);
}

TEST(Wasserstein1, CostMatchesPlanRecomputation) {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = gen_measure(rng, 2, 1 + trial % 7);
    const auto b = gen_measure(rng, 2, 1 + trial % 5);
    const auto plan = wasserstein1(a, b);
    EXPECT_NEAR(plan.cost, coupling_cost(plan.coupling), 1e-12);
    EXPECT_GE(plan.cost, 0.0);
  }
}

TEST(Wasserstein1, MatchesVertexEnumerationOracle) {
  Rng rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = trial % 2 == 0 ? 1 : 2;
    const auto a = gen_dyadic_measure(rng, dim, 1 + rng.uniform_int(0, 3));
    const auto b = gen_dyadic_measure(rng, dim, 1 + rng.uniform_int(0, 3));
    EXPECT_NEAR(wasserstein1(a, b).cost, oracle_w1(a, b), 1e-9) << "trial " << trial;
  }
}

TEST(Wasserstein1, ConvexityInTheFirstArgument) {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m1 = gen_measure(rng, 2, 3), m2 = gen_measure(rng, 2, 3), nu = gen_measure(rng, 2, 4);
    const Rational t(rng.uniform_int(0, 8), 8);
    const double lhs = wasserstein1(mixture(t, m1, m2), nu).cost;
    const double rhs = (1.0 - t.to_double()) * wasserstein1(m1, nu).cost + t.to_double() * wasserstein1(m2, nu).cost;
    EXPECT_LE(lhs, rhs + 1e-9);
  }
}

TEST(Wasserstein1, MetricAxioms) {
  Rng rng(59);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = gen_measure(rng, 2, 3), b = gen_measure(rng, 2, 4), c = gen_measure(rng, 2, 2);
    const double ab = wasserstein1(a, b).cost, ba = wasserstein1(b, a).cost;
    EXPECT_NEAR(ab, ba, 1e-9);
    EXPECT_LE(wasserstein1(a, c).cost, ab + wasserstein1(b, c).cost + 1e-9);
    EXPECT_GT(ab, 0.0);
  }
}

TEST(Wasserstein1, Errors) {
  EXPECT_THROW(wasserstein1(dirac(scalar(1.0)), dirac(PDMatrix::identity(2))), InvalidArgument);
  std::vector<PDMatrix> pts;
  std::vector<Rational> ws;
  for (int k = 0; k < 300; ++k) {
    pts.push_back(scalar(1.0 + k));
    ws.emplace_back(1, 300);
  }
  const DiscreteMeasure big(pts, ws);
  EXPECT_THROW(wasserstein1(big, big), CapacityError);
  const auto fine1 = scalar_measure({1.0, 2.0}, {q(1, (1ull << 40) + 1), q(1ull << 40, (1ull << 40) + 1)});
  const auto fine2 = scalar_measure({1.0, 2.0}, {q(1, (1ull << 40) - 1), q((1ull << 40) - 2, (1ull << 40) - 1)});
  EXPECT_THROW(wasserstein1(fine1, fine2), CapacityError);
}

TEST(AssignmentUniform, Examples) {
  const auto t = scalar_tuple({1.0, 4.0, 2.0});
  const auto self = assignment_uniform(t, t);
  EXPECT_EQ(self.perm, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(self.total_cost, 0.0);
  const auto ex = assignment_uniform(scalar_tuple({1.0, kE}), scalar_tuple({kE, kE * kE}));
  EXPECT_EQ(ex.perm, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(ex.mean_cost(), 1.0, 1e-12);
  const PDMatrix x = PDMatrix::diagonal({1.0, 2.0}), y = PDMatrix::diagonal({2.0, 0.5});
  EXPECT_DOUBLE_EQ(assignment_uniform(UniformTuple({x}), UniformTuple({y})).total_cost, thompson_dist(x, y));
  EXPECT_THROW(assignment_uniform(scalar_tuple({1.0}), scalar_tuple({1.0, 2.0})), InvalidArgument);
}

TEST(AssignmentUniform, MatchesPermutationEnumeration) {
  Rng rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<PDMatrix> a, b;
    for (std::size_t k = 0; k < n; ++k) {
      a.push_back(gen_pd(rng, 2));
      b.push_back(gen_pd(rng, 2));
    }
    const auto got = assignment_uniform(UniformTuple(a), UniformTuple(b));
    const auto [best, perm] = oracle::best_permutation(n, thompson_cost_matrix(a, b));
    EXPECT_NEAR(got.total_cost, best, 1e-9);
  }
}

TEST(AssignmentUniform, AgreesWithFlowOnUniformMeasures) {
  Rng rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(0, 7);
    std::vector<PDMatrix> a, b;
    for (std::size_t k = 0; k < n; ++k) {
      a.push_back(gen_pd(rng, 1 + trial % 3));
      b.push_back(gen_pd(rng, 1 + trial % 3));
    }
    // Repeat an entry so the tuples carry multiplicities.
    if (n > 2) a[1] = a[0];
    const UniformTuple ta(a), tb(b);
    EXPECT_NEAR(assignment_uniform(ta, tb).mean_cost(), wasserstein1(uniform_of_tuple(ta), uniform_of_tuple(tb)).cost,
                1e-9);
  }
}

TEST(PlanCostBound, Examples) {
  Rng rng(71);
  const auto m = gen_measure(rng, 2, 3);
  EXPECT_EQ(plan_cost_bound([](const PDMatrix& x) { return x; }, m), 0.0);
  const PDMatrix a = gen_pd(rng, 2), x = gen_pd(rng, 2);
  EXPECT_DOUBLE_EQ(plan_cost_bound([&](const PDMatrix&) { return a; }, dirac(x)), thompson_dist(x, a));
  const auto two = scalar_measure({1.0, kE * kE}, {q(1, 2), q(1, 2)});
  const auto clamp = [](const PDMatrix& p) {
    return scalar(std::clamp(p(0, 0), 1.0 / kE, kE));
  };
  EXPECT_NEAR(plan_cost_bound(clamp, two), 0.5, 1e-12);
}

TEST(PlanCostBound, BoundsTheTransportCost) {
  Rng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = gen_measure(rng, 2, 4);
    const PDMatrix target = gen_pd(rng, 2);
    const double t = rng.uniform(0.0, 1.0);
    // Moves every point part of the way toward a common target.
    auto f = [&](const PDMatrix& x) { return PDMatrix((1.0 - t) * x.sym() + t * target.sym()); };
    EXPECT_LE(wasserstein1(m, push_forward(f, m)).cost, plan_cost_bound(f, m) + 1e-12);
  }
}

}  // namespace
}  // namespace ordcone
