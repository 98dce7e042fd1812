#pragma once

// Exact Wasserstein-1 transport between discrete measures under the
// Thompson metric.

#include <vector>

#include "ordcone/measure.hpp"

namespace ordcone {

inline constexpr std::size_t kMaxTransportSupport = 512;
inline constexpr std::size_t kMaxAssignment = 256;

struct TransportPlan {
  Coupling coupling;
  double cost = 0.0;
};

/// Dense Thompson-distance matrix, row-major left.size() x right.size().
std::vector<double> thompson_cost_matrix(const std::vector<PDMatrix>& left,
                                         const std::vector<PDMatrix>& right,
                                         const Tolerances& tol = {});

/// sum over arcs of w(i, j) * d(x_i, y_j), summed in (i, j) order.
double coupling_cost(const Coupling& c, const Tolerances& tol = {});

/// Optimal coupling for the W1 transportation problem. Weights are scaled
/// to integers by the lcm of every denominator and solved exactly with
/// successive shortest paths. Throws CapacityError on lcm overflow or when
/// the supports together exceed 512 points.
TransportPlan wasserstein1(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                           const Tolerances& tol = {});

struct Assignment {
  std::vector<std::size_t> perm;  // entry k of t1 is matched to entry perm[k] of t2
  double total_cost = 0.0;

  double mean_cost() const { return total_cost / static_cast<double>(perm.size()); }
};

/// Minimum-cost perfect matching between equal-length tuples (Hungarian
/// method), arc cost thompson_dist.
Assignment assignment_uniform(const UniformTuple& t1, const UniformTuple& t2,
                              const Tolerances& tol = {});

/// sum_x m(x) d(x, f(x)); an upper bound for W1(m, f_*(m)).
double plan_cost_bound(const PointMap& f, const DiscreteMeasure& m, const Tolerances& tol = {});

}  // namespace ordcone
