#pragma once

// Order-preserving approximation of discrete measures by uniform (dyadic)
// measures: truncation onto nested order intervals, dyadic lowering and
// raising, interval-cover reduction, and the paired pipeline q_n <= p_n.

#include <cstdint>
#include <vector>

#include "ordcone/measure.hpp"
#include "ordcone/stochastic_order.hpp"

namespace ordcone {

inline constexpr int kMaxDyadicDepth = 40;

/// A_n = [e^{-n} a, e^{n} a], the closed Thompson ball of radius r_n = n
/// around the base point a, with normality constant K = 1.
class ApproxSchedule {
 public:
  explicit ApproxSchedule(PDMatrix base);
  static ApproxSchedule identity(std::size_t dim) { return ApproxSchedule(PDMatrix::identity(dim)); }

  const PDMatrix& base() const noexcept { return base_; }
  double normality_constant() const noexcept { return 1.0; }
  double radius(int n) const noexcept { return static_cast<double>(n); }
  PDMatrix lower_end(int n) const;  // z_n
  PDMatrix upper_end(int n) const;  // w_n
  OrderInterval interval(int n) const;

 private:
  PDMatrix base_;
};

/// Points outside A_n are sent to z_n; the result is <= q.
DiscreteMeasure truncate_lower(const DiscreteMeasure& q, const ApproxSchedule& sched, int n,
                               const Tolerances& tol = {});
/// Points outside A_n are sent to w_n; the result is >= p.
DiscreteMeasure truncate_upper(const DiscreteMeasure& p, const ApproxSchedule& sched, int n,
                               const Tolerances& tol = {});

/// The point maps behind truncate_lower / truncate_upper.
PointMap truncation_map_lower(const ApproxSchedule& sched, int n, const Tolerances& tol = {});
PointMap truncation_map_upper(const ApproxSchedule& sched, int n, const Tolerances& tol = {});

/// Uniform measure p <= q with W1(q, p) < eps: every weight w_i is rounded
/// down to a multiple of 2^{-k} with w_i - r_i < eps / (n B),
/// B = max_i d(x_i, z), and the excess mass is placed at z. Requires
/// z <= x_i on supp(q). Measures whose weights are already dyadic are
/// returned unchanged.
DiscreteMeasure dyadic_lower(const DiscreteMeasure& q, const PDMatrix& z, double eps, const Tolerances& tol = {});

/// Order dual of dyadic_lower: requires x_i <= w, returns p >= q.
DiscreteMeasure dyadic_upper(const DiscreteMeasure& q, const PDMatrix& w, double eps, const Tolerances& tol = {});

enum class Direction { kLower, kUpper };

/// Greedy cover of supp(q) by Thompson balls of radius eps/4 centred at
/// support points taken in lexicographic order. Each point of the cell with
/// centre c moves to e^{-eps/4} c (lower) or e^{eps/4} c (upper).
DiscreteMeasure interval_cover_reduce(const DiscreteMeasure& q, double eps, Direction direction,
                                      const Tolerances& tol = {});

struct ApproxStep {
  int n = 0;
  DiscreteMeasure truncated_q;
  DiscreteMeasure truncated_p;
  DiscreteMeasure q_n;
  DiscreteMeasure p_n;
  OrderCertificate certificate;  // q_n <= p_n
  double dw_q = 0.0;             // W1(q_n, q)
  double dw_p = 0.0;             // W1(p_n, p)
  double dw_trunc_q = 0.0;       // W1(truncated_q, q)
  double dw_trunc_p = 0.0;       // W1(truncated_p, p)
  double trunc_bound_q = 0.0;    // plan_cost_bound of the lower truncation map
  double trunc_bound_p = 0.0;
  double eps = 0.0;              // dyadic slack 1/n

  bool leq_ok() const noexcept { return certificate.verdict; }
};

struct ApproxTrace {
  std::vector<ApproxStep> steps;

  bool all_ordered() const noexcept;
};

/// For n = 1..n_max: q_n = dyadic_lower(truncate_lower(q, n), z_{n+1}, 1/n)
/// and p_n = dyadic_upper(truncate_upper(p, n), w_{n+1}, 1/n), with the
/// order q_n <= p_n certified by max-flow. Requires q <= p.
ApproxTrace order_approximate_pair(const DiscreteMeasure& q, const DiscreteMeasure& p, const ApproxSchedule& sched,
                                   int n_max, const Tolerances& tol = {});

}  // namespace ordcone
