#include <gtest/gtest.h>

#include <cmath>

#include "ordcone/errors.hpp"
#include "ordcone/order_approx.hpp"
#include "ordcone/stochastic_order.hpp"
#include "ordcone/transport.hpp"
#include "test_support.hpp"

namespace ordcone {
namespace {

using testing::q;
using testing::scalar;
using testing::scalar_measure;

bool leq(const DiscreteMeasure& a, const DiscreteMeasure& b) { return stochastic_leq_flow(a, b).verdict; }

// Spreads support points over several decades so truncation has work to do.
DiscreteMeasure spread_measure(Rng& rng, std::size_t dim, std::size_t size) {
  const auto base = gen_measure(rng, dim, size);
  return push_forward([&](const PDMatrix& x) { return x.scaled(std::exp(rng.uniform(-4.0, 4.0))); }, base);
}

TEST(Schedule, IntervalsAreNestedBalls) {
  const auto sched = ApproxSchedule::identity(2);
  EXPECT_EQ(sched.normality_constant(), 1.0);
  for (int n = 1; n <= 6; ++n) {
    const auto iv = sched.interval(n);
    const auto ball = thompson_ball(sched.base(), n);
    EXPECT_EQ(iv.lo(), ball.lo());
    EXPECT_EQ(iv.hi(), ball.hi());
    const auto next = sched.interval(n + 1);
    EXPECT_GT(min_eigenvalue(iv.lo().sym() - next.lo().sym()), 0.0);
    EXPECT_GT(min_eigenvalue(next.hi().sym() - iv.hi().sym()), 0.0);
    EXPECT_NEAR(sched.lower_end(n)(0, 0), std::exp(-n), 1e-15);
    EXPECT_NEAR(sched.upper_end(n)(1, 1), std::exp(n), 1e-12 * std::exp(n));
  }
  EXPECT_THROW(sched.interval(0), InvalidArgument);
}

TEST(Truncate, Examples) {
  const ApproxSchedule s1 = ApproxSchedule::identity(1);
  const auto m = scalar_measure({std::exp(-5.0), std::exp(1.0)}, {q(1, 2), q(1, 2)});
  EXPECT_TRUE(same_measure(truncate_lower(m, s1, 1),
                           scalar_measure({std::exp(-1.0), std::exp(1.0)}, {q(1, 2), q(1, 2)})));
  EXPECT_TRUE(same_measure(truncate_upper(m, s1, 1), dirac(scalar(std::exp(1.0)))));

  const ApproxSchedule s2 = ApproxSchedule::identity(2);
  for (int n = 1; n <= 4; ++n) {
    const auto above = dirac(PDMatrix::identity(2).scaled(std::exp(n + 2.0)));
    const auto below = dirac(PDMatrix::identity(2).scaled(std::exp(-(n + 2.0))));
    EXPECT_TRUE(same_measure(truncate_lower(above, s2, n), dirac(s2.lower_end(n))));
    EXPECT_TRUE(same_measure(truncate_upper(below, s2, n), dirac(s2.upper_end(n))));
  }

  const auto inside = scalar_measure({0.5, 2.0}, {q(1, 3), q(2, 3)});
  EXPECT_TRUE(same_measure(truncate_lower(inside, s1, 1), inside));
  EXPECT_TRUE(same_measure(truncate_upper(inside, s1, 1), inside));
  EXPECT_THROW(truncate_lower(inside, s2, 1), InvalidArgument);
}

TEST(Truncate, TruncatedPairStaysOrdered) {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const auto sched = ApproxSchedule::identity(dim);
    auto [qm, pm] = gen_ordered_pair(rng, dim, 1 + trial % 6, 3.0);
    const double s = std::exp(rng.uniform(-4.0, 4.0));
    qm = push_forward([&](const PDMatrix& x) { return x.scaled(s); }, qm);
    pm = push_forward([&](const PDMatrix& x) { return x.scaled(s); }, pm);
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 5));
    EXPECT_TRUE(leq(truncate_lower(qm, sched, n), truncate_upper(pm, sched, n))) << trial;
  }
}

TEST(Truncate, OneSidedOrderWhenAnchorIsComparable) {
  // Lower truncation moves mass down only when z_n lies below the moved points.
  Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const auto sched = ApproxSchedule::identity(dim);
    const auto m = gen_measure(rng, dim, 1 + trial % 6);
    const auto high = push_forward([](const PDMatrix& x) { return x.scaled(1.5 / min_eigenvalue(x.sym())); }, m);
    const auto low = push_forward([](const PDMatrix& x) { return x.scaled(0.6 / max_eigenvalue(x.sym())); }, m);
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 5));
    EXPECT_TRUE(leq(truncate_lower(high, sched, n), high)) << trial;
    EXPECT_TRUE(leq(low, truncate_upper(low, sched, n))) << trial;
  }
}

TEST(Truncate, LowerTruncationCanRaiseMass) {
  const auto sched = ApproxSchedule::identity(1);
  const auto m = scalar_measure({std::exp(-5.0), std::exp(1.0)}, {q(1, 2), q(1, 2)});
  const auto t = truncate_lower(m, sched, 1);
  EXPECT_FALSE(leq(t, m));
  EXPECT_TRUE(leq(m, t));
  const auto u = truncate_upper(dirac(scalar(std::exp(5.0))), sched, 1);
  EXPECT_FALSE(leq(dirac(scalar(std::exp(5.0))), u));
}

// Bound of the map that fixes A_n and sends the rest to the base point.
double fixed_anchor_bound(const ApproxSchedule& sched, int n, const DiscreteMeasure& m) {
  const auto iv = sched.interval(n);
  const PDMatrix a = sched.base();
  return plan_cost_bound([&](const PDMatrix& x) { return in_interval(x, iv) ? x : a; }, m);
}

TEST(Truncate, BoundsShrinkToZero) {
  Rng rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const auto sched = ApproxSchedule::identity(dim);
    const auto m = spread_measure(rng, dim, 1 + trial % 6);
    // Parts of m strictly below / above the base point.
    const auto below = push_forward([](const PDMatrix& x) { return x.scaled(1e-3 / max_eigenvalue(x.sym())); }, m);
    const auto above = push_forward([](const PDMatrix& x) { return x.scaled(1e3 / min_eigenvalue(x.sym())); }, m);

    double prev_fixed = fixed_anchor_bound(sched, 1, m);
    double prev_lo = plan_cost_bound(truncation_map_lower(sched, 1), below);
    double prev_hi = plan_cost_bound(truncation_map_upper(sched, 1), above);
    int zero_at = 0;
    for (int k = 2; k <= 40 && zero_at == 0; ++k) {
      const double fixed = fixed_anchor_bound(sched, k, m);
      const double lo = plan_cost_bound(truncation_map_lower(sched, k), below);
      const double hi = plan_cost_bound(truncation_map_upper(sched, k), above);
      EXPECT_LE(fixed, prev_fixed + 1e-12) << trial << " n=" << k;
      if (dim == 1) {
        EXPECT_LE(lo, prev_lo + 1e-12) << trial << " n=" << k;
        EXPECT_LE(hi, prev_hi + 1e-12) << trial << " n=" << k;
      }
      prev_fixed = fixed;
      prev_lo = lo;
      prev_hi = hi;
      const bool done = plan_cost_bound(truncation_map_lower(sched, k), m) == 0.0 &&
                        plan_cost_bound(truncation_map_upper(sched, k), m) == 0.0;
      if (done && fixed == 0.0 && lo == 0.0 && hi == 0.0) zero_at = k;
    }
    EXPECT_GT(zero_at, 0) << trial;
  }
}

TEST(Truncate, MovingAnchorBoundCanGrow) {
  // A point far above A_n is sent to z_n, which recedes as n grows.
  const auto sched = ApproxSchedule::identity(1);
  const auto m = dirac(scalar(std::exp(5.0)));
  EXPECT_NEAR(plan_cost_bound(truncation_map_lower(sched, 1), m), 6.0, 1e-12);
  EXPECT_NEAR(plan_cost_bound(truncation_map_lower(sched, 2), m), 7.0, 1e-12);
  EXPECT_EQ(plan_cost_bound(truncation_map_lower(sched, 5), m), 0.0);

  // Even below A_n a wide spectrum overshoots once z_n passes its top eigenvalue.
  const auto s2 = ApproxSchedule::identity(2);
  const auto low = dirac(PDMatrix::diagonal({std::exp(-10.0), std::exp(-6.0)}));
  EXPECT_NEAR(plan_cost_bound(truncation_map_lower(s2, 8), low), 2.0, 1e-9);
  EXPECT_NEAR(plan_cost_bound(truncation_map_lower(s2, 9), low), 3.0, 1e-9);
  EXPECT_EQ(plan_cost_bound(truncation_map_lower(s2, 10), low), 0.0);
}

TEST(Dyadic, Examples) {
  const auto x = PDMatrix::diagonal({2.0, 3.0});
  const auto z = PDMatrix::identity(2);
  EXPECT_TRUE(same_measure(dyadic_lower(dirac(x), z, 0.1), dirac(x)));
  EXPECT_TRUE(same_measure(dyadic_upper(dirac(x), x.scaled(2.0), 0.1), dirac(x)));

  const auto uniform = scalar_measure({1.5, 2.0, 3.0, 4.0}, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)});
  EXPECT_TRUE(same_measure(dyadic_lower(uniform, scalar(1.0), 0.01), uniform));
  EXPECT_TRUE(same_measure(dyadic_upper(uniform, scalar(5.0), 0.01), uniform));

  const double e = std::exp(1.0);
  const auto m = scalar_measure({e, e * e}, {q(2, 3), q(1, 3)});
  const auto lo = dyadic_lower(m, scalar(1.0), 0.2);
  EXPECT_TRUE(lo.is_dyadic());
  EXPECT_TRUE(leq(lo, m));
  EXPECT_TRUE(stochastic_leq_bruteforce(lo, m));
  EXPECT_LT(wasserstein1(m, lo).cost, 0.2);
  for (const auto& p : lo.points()) EXPECT_TRUE(m.find(p) < m.size() || same_point(p, scalar(1.0)));

  const auto hi = dyadic_upper(m, scalar(e * e * e), 0.2);
  EXPECT_TRUE(hi.is_dyadic());
  EXPECT_TRUE(stochastic_leq_bruteforce(m, hi));
  EXPECT_LT(wasserstein1(m, hi).cost, 0.2);
}

TEST(Dyadic, Errors) {
  const auto m = scalar_measure({1.0, 2.0}, {q(1, 3), q(2, 3)});
  EXPECT_THROW(dyadic_lower(m, scalar(1.5), 0.1), InvalidArgument);
  EXPECT_THROW(dyadic_upper(m, scalar(1.5), 0.1), InvalidArgument);
  EXPECT_THROW(dyadic_lower(m, scalar(0.5), 0.0), InvalidArgument);
  EXPECT_THROW(dyadic_lower(m, scalar(0.5), 1e-13), CapacityError);
}

TEST(Dyadic, ContractOnRandomInstances) {
  Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const auto m = gen_measure(rng, dim, 1 + trial % 6);
    double lo_eig = 1e300, hi_eig = 0.0;
    for (const auto& x : m.points()) {
      lo_eig = std::min(lo_eig, min_eigenvalue(x.sym()));
      hi_eig = std::max(hi_eig, max_eigenvalue(x.sym()));
    }
    const auto z = PDMatrix::identity(dim).scaled(0.5 * lo_eig);
    const auto w = PDMatrix::identity(dim).scaled(2.0 * hi_eig);
    for (double eps : {0.2, 0.05}) {
      const auto lo = dyadic_lower(m, z, eps);
      const auto hi = dyadic_upper(m, w, eps);
      EXPECT_TRUE(lo.is_dyadic());
      EXPECT_TRUE(hi.is_dyadic());
      EXPECT_TRUE(leq(lo, m)) << trial;
      EXPECT_TRUE(leq(m, hi)) << trial;
      EXPECT_LT(wasserstein1(m, lo).cost, eps);
      EXPECT_LT(wasserstein1(m, hi).cost, eps);
    }
  }
}

TEST(IntervalCover, Examples) {
  const auto x = PDMatrix::diagonal({2.0, 5.0});
  const double eps = 0.4;
  const auto down = interval_cover_reduce(dirac(x), eps, Direction::kLower);
  EXPECT_TRUE(same_measure(down, dirac(x.scaled(std::exp(-eps / 4)))));
  EXPECT_TRUE(leq(down, dirac(x)));
  const auto up = interval_cover_reduce(dirac(x), eps, Direction::kUpper);
  EXPECT_TRUE(same_measure(up, dirac(x.scaled(std::exp(eps / 4)))));

  // One huge cell: everything collapses onto the lexicographically first point.
  const auto m = scalar_measure({3.0, 1.0, 2.0}, {q(1, 3), q(1, 3), q(1, 3)});
  EXPECT_TRUE(same_measure(interval_cover_reduce(m, 100.0, Direction::kLower), dirac(scalar(std::exp(-25.0)))));
  EXPECT_THROW(interval_cover_reduce(m, -1.0, Direction::kLower), InvalidArgument);
}

TEST(IntervalCover, OrderAndDistance) {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    const auto m = gen_measure(rng, dim, 1 + trial % 6);
    const double eps = rng.uniform(0.05, 2.0);
    const auto lo = interval_cover_reduce(m, eps, Direction::kLower);
    const auto hi = interval_cover_reduce(m, eps, Direction::kUpper);
    EXPECT_TRUE(leq(lo, m)) << trial;
    EXPECT_TRUE(leq(m, hi)) << trial;
    EXPECT_LE(wasserstein1(m, lo).cost, eps / 2 + 1e-9);
    EXPECT_LE(wasserstein1(m, hi).cost, eps / 2 + 1e-9);
  }
}

TEST(Pipeline, DiracIsFixed) {
  const auto a = PDMatrix::identity(2);
  const auto trace = order_approximate_pair(dirac(a), dirac(a), ApproxSchedule::identity(2), 10);
  ASSERT_EQ(trace.steps.size(), 10u);
  for (const auto& step : trace.steps) {
    EXPECT_TRUE(same_measure(step.q_n, dirac(a)));
    EXPECT_TRUE(same_measure(step.p_n, dirac(a)));
    EXPECT_EQ(step.dw_q, 0.0);
    EXPECT_EQ(step.dw_p, 0.0);
  }
  EXPECT_TRUE(trace.all_ordered());
}

TEST(Pipeline, InsideFirstIntervalOnlyDyadicActs) {
  const auto qm = scalar_measure({0.5, 1.0}, {q(1, 3), q(2, 3)});
  const auto pm = scalar_measure({1.0, 2.0}, {q(1, 3), q(2, 3)});
  const auto trace = order_approximate_pair(qm, pm, ApproxSchedule::identity(1), 8);
  for (const auto& step : trace.steps) {
    EXPECT_TRUE(same_measure(step.truncated_q, qm));
    EXPECT_TRUE(same_measure(step.truncated_p, pm));
    EXPECT_TRUE(step.leq_ok());
    EXPECT_LT(step.dw_q, 1.0 / step.n);
    EXPECT_LT(step.dw_p, 1.0 / step.n);
  }
}

TEST(Pipeline, SandwichAndConvergence) {
  Rng rng(109);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    auto [qm, pm] = gen_ordered_pair(rng, dim, 2 + trial % 5);
    const auto spread = std::exp(rng.uniform(-3.0, 3.0));
    qm = push_forward([&](const PDMatrix& x) { return x.scaled(spread); }, qm);
    pm = push_forward([&](const PDMatrix& x) { return x.scaled(spread); }, pm);
    const auto sched = ApproxSchedule::identity(dim);
    const auto trace = order_approximate_pair(qm, pm, sched, 40);
    ASSERT_TRUE(trace.all_ordered());
    for (const auto& s : trace.steps) {
      EXPECT_TRUE(leq(s.q_n, s.truncated_q)) << trial << " n=" << s.n;
      EXPECT_TRUE(leq(s.truncated_q, s.truncated_p)) << trial << " n=" << s.n;
      EXPECT_TRUE(leq(s.truncated_p, s.p_n)) << trial << " n=" << s.n;
      EXPECT_TRUE(s.q_n.is_dyadic());
      EXPECT_TRUE(s.p_n.is_dyadic());
      EXPECT_LT(s.dw_q, s.dw_trunc_q + 1.0 / s.n + 1e-12);
      EXPECT_LT(s.dw_p, s.dw_trunc_p + 1.0 / s.n + 1e-12);
      EXPECT_LE(s.dw_trunc_q, s.trunc_bound_q + 1e-12);
      EXPECT_LE(s.dw_trunc_p, s.trunc_bound_p + 1e-12);
      const bool q_inside = s.trunc_bound_q == 0.0;
      if (q_inside) EXPECT_LE(s.dw_q, 1.0 / s.n);
    }
    EXPECT_LT(trace.steps.back().dw_q, 0.05);
    EXPECT_LT(trace.steps.back().dw_p, 0.05);
  }
}

TEST(Pipeline, Errors) {
  const auto lo = dirac(scalar(1.0));
  const auto hi = dirac(scalar(2.0));
  EXPECT_THROW(order_approximate_pair(hi, lo, ApproxSchedule::identity(1), 3), InvalidArgument);
  EXPECT_THROW(order_approximate_pair(lo, hi, ApproxSchedule::identity(1), 0), InvalidArgument);
  EXPECT_THROW(order_approximate_pair(lo, hi, ApproxSchedule::identity(2), 3), InvalidArgument);
}

}  // namespace
}  // namespace ordcone
