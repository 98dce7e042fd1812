#include "ordcone/order_approx.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ordcone/errors.hpp"
#include "ordcone/transport.hpp"

namespace ordcone {
namespace {

enum class Side { kLower, kUpper };

PointMap truncation_map(const ApproxSchedule& sched, int n, Side side, const Tolerances& tol) {
  const OrderInterval iv = sched.interval(n);
  const PDMatrix target = side == Side::kLower ? iv.lo() : iv.hi();
  return [iv, target, tol](const PDMatrix& x) { return in_interval(x, iv, tol) ? x : target; };
}

DiscreteMeasure dyadic_round(const DiscreteMeasure& q, const PDMatrix& anchor, double eps, Side side,
                             const Tolerances& tol) {
  const char* op = side == Side::kLower ? "dyadic_lower" : "dyadic_upper";
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument(std::string(op) + ": eps must be positive");
  if (anchor.dim() != q.dim()) throw InvalidArgument(std::string(op) + ": dimension mismatch");
  double bound = 0.0;
  for (const auto& x : q.points()) {
    const bool ok = side == Side::kLower ? loewner_leq(anchor, x, tol) : loewner_leq(x, anchor, tol);
    if (!ok)
      throw InvalidArgument(std::string(op) + (side == Side::kLower ? ": anchor z is not below every support point"
                                                                     : ": anchor w is not above every support point"));
    bound = std::max(bound, thompson_dist(x, anchor, tol));
  }
  if (q.is_dyadic()) return q;

  // Smallest k with 2^{-k} < eps / (n B).
  const double threshold = eps / (static_cast<double>(q.size()) * bound);
  int depth = 0;
  while (!(std::ldexp(1.0, -depth) < threshold)) {
    if (++depth > kMaxDyadicDepth)
      throw CapacityError(std::string(op) + ": required dyadic depth exceeds 2^40 (eps too small)");
  }
  const std::uint64_t scale = std::uint64_t{1} << depth;

  std::vector<PDMatrix> points;
  std::vector<Rational> weights;
  Rational kept;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Rational& w = q.weight(i);
    const std::uint64_t ticks = floor_scaled(w, scale);
    if (ticks == 0) continue;
    Rational r(ticks, scale);
    kept += r;
    points.push_back(q.point(i));
    weights.push_back(r);
  }
  const Rational excess = Rational(1) - kept;
  if (!excess.is_zero()) {
    points.push_back(anchor);
    weights.push_back(excess);
  }
  return DiscreteMeasure(std::move(points), std::move(weights), tol);
}

template <class Fn>
auto at_step(int n, Fn&& fn) -> decltype(fn()) {
  const auto prefix = [n] { return "step " + std::to_string(n) + ": "; };
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(prefix() + e.what());
  } catch (const CapacityError& e) {
    throw CapacityError(prefix() + e.what());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(prefix() + e.what(), e.last_residual());
  }
}

}  // namespace

ApproxSchedule::ApproxSchedule(PDMatrix base) : base_(std::move(base)) {}

PDMatrix ApproxSchedule::lower_end(int n) const { return base_.scaled(std::exp(-radius(n))); }

PDMatrix ApproxSchedule::upper_end(int n) const { return base_.scaled(std::exp(radius(n))); }

OrderInterval ApproxSchedule::interval(int n) const {
  if (n < 1) throw InvalidArgument("ApproxSchedule: step index must be >= 1");
  return thompson_ball(base_, radius(n));
}

PointMap truncation_map_lower(const ApproxSchedule& sched, int n, const Tolerances& tol) {
  return truncation_map(sched, n, Side::kLower, tol);
}

PointMap truncation_map_upper(const ApproxSchedule& sched, int n, const Tolerances& tol) {
  return truncation_map(sched, n, Side::kUpper, tol);
}

DiscreteMeasure truncate_lower(const DiscreteMeasure& q, const ApproxSchedule& sched, int n, const Tolerances& tol) {
  if (q.dim() != sched.base().dim()) throw InvalidArgument("truncate_lower: dimension mismatch");
  return push_forward(truncation_map_lower(sched, n, tol), q, tol);
}

DiscreteMeasure truncate_upper(const DiscreteMeasure& p, const ApproxSchedule& sched, int n, const Tolerances& tol) {
  if (p.dim() != sched.base().dim()) throw InvalidArgument("truncate_upper: dimension mismatch");
  return push_forward(truncation_map_upper(sched, n, tol), p, tol);
}

DiscreteMeasure dyadic_lower(const DiscreteMeasure& q, const PDMatrix& z, double eps, const Tolerances& tol) {
  return dyadic_round(q, z, eps, Side::kLower, tol);
}

DiscreteMeasure dyadic_upper(const DiscreteMeasure& q, const PDMatrix& w, double eps, const Tolerances& tol) {
  return dyadic_round(q, w, eps, Side::kUpper, tol);
}

DiscreteMeasure interval_cover_reduce(const DiscreteMeasure& q, double eps, Direction direction,
                                      const Tolerances& tol) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("interval_cover_reduce: eps must be positive");
  const double r = eps / 4.0;
  const double shift = direction == Direction::kLower ? std::exp(-r) : std::exp(r);

  std::vector<std::size_t> order(q.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(q.point(a), q.point(b)); });

  std::vector<std::size_t> centres;
  std::vector<std::size_t> cell_of(q.size());
  for (std::size_t k : order) {
    auto hit = std::find_if(centres.begin(), centres.end(),
                            [&](std::size_t c) { return thompson_dist(q.point(c), q.point(k), tol) <= r; });
    if (hit == centres.end()) {
      cell_of[k] = k;
      centres.push_back(k);
    } else {
      cell_of[k] = *hit;
    }
  }

  std::vector<PDMatrix> images;
  images.reserve(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) images.push_back(q.point(cell_of[k]).scaled(shift));
  return DiscreteMeasure(std::move(images), q.weights(), tol);
}

bool ApproxTrace::all_ordered() const noexcept {
  return std::all_of(steps.begin(), steps.end(), [](const ApproxStep& s) { return s.leq_ok(); });
}

ApproxTrace order_approximate_pair(const DiscreteMeasure& q, const DiscreteMeasure& p, const ApproxSchedule& sched,
                                   int n_max, const Tolerances& tol) {
  if (n_max < 1) throw InvalidArgument("order_approximate_pair: n_max must be >= 1");
  if (q.dim() != p.dim() || q.dim() != sched.base().dim())
    throw InvalidArgument("order_approximate_pair: dimension mismatch");
  if (!stochastic_leq_flow(q, p, tol).verdict)
    throw InvalidArgument("order_approximate_pair: precondition q <= p fails");

  ApproxTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    trace.steps.push_back(at_step(n, [&] {
      const double eps = 1.0 / n;
      DiscreteMeasure tq = truncate_lower(q, sched, n, tol);
      DiscreteMeasure tp = truncate_upper(p, sched, n, tol);
      DiscreteMeasure qn = dyadic_lower(tq, sched.lower_end(n + 1), eps, tol);
      DiscreteMeasure pn = dyadic_upper(tp, sched.upper_end(n + 1), eps, tol);
      OrderCertificate cert = stochastic_leq_flow(qn, pn, tol);
      ApproxStep step{n, tq, tp, qn, pn, std::move(cert)};
      step.eps = eps;
      step.dw_q = wasserstein1(qn, q, tol).cost;
      step.dw_p = wasserstein1(pn, p, tol).cost;
      step.dw_trunc_q = wasserstein1(tq, q, tol).cost;
      step.dw_trunc_p = wasserstein1(tp, p, tol).cost;
      step.trunc_bound_q = plan_cost_bound(truncation_map_lower(sched, n, tol), q, tol);
      step.trunc_bound_p = plan_cost_bound(truncation_map_upper(sched, n, tol), p, tol);
      return step;
    }));
  }
  return trace;
}

}  // namespace ordcone
