#include "ordcone/transport.hpp"

#include <limits>
#include <string>

#include "flow_networks.hpp"
#include "ordcone/errors.hpp"

namespace ordcone {

std::vector<double> thompson_cost_matrix(const std::vector<PDMatrix>& left,
                                         const std::vector<PDMatrix>& right,
                                         const Tolerances& tol) {
  std::vector<double> cost(left.size() * right.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      cost[i * right.size() + j] = thompson_dist(left[i], right[j], tol);
  return cost;
}

double coupling_cost(const Coupling& c, const Tolerances& tol) {
  double total = 0.0;
  for (const auto& arc : c.arcs())
    total += arc.w.to_double() * thompson_dist(c.left().point(arc.i), c.right().point(arc.j), tol);
  return total;
}

TransportPlan wasserstein1(const DiscreteMeasure& m1, const DiscreteMeasure& m2, const Tolerances& tol) {
  if (m1.dim() != m2.dim()) throw InvalidArgument("wasserstein1: dimension mismatch");
  if (m1.size() + m2.size() > kMaxTransportSupport)
    throw CapacityError("wasserstein1: combined support exceeds 512 points");

  const std::uint64_t scale = checked_lcm(m1.common_denominator(), m2.common_denominator());
  const std::size_t rows = m1.size(), cols = m2.size();
  const auto cost = thompson_cost_matrix(m1.points(), m2.points(), tol);

  // Nodes: source, left supports, right supports, sink.
  const std::size_t source = 0, sink = rows + cols + 1;
  detail::MinCostFlow net(rows + cols + 2);
  for (std::size_t i = 0; i < rows; ++i)
    net.add_edge(source, 1 + i, static_cast<std::int64_t>(scaled_integer(m1.weight(i), scale)), 0.0);
  std::vector<std::size_t> arc_ids(rows * cols);
  const auto unbounded = static_cast<std::int64_t>(scale);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      arc_ids[i * cols + j] = net.add_edge(1 + i, 1 + rows + j, unbounded, cost[i * cols + j]);
  for (std::size_t j = 0; j < cols; ++j)
    net.add_edge(1 + rows + j, sink, static_cast<std::int64_t>(scaled_integer(m2.weight(j), scale)), 0.0);

  const std::int64_t pushed = net.run(source, sink, unbounded);
  if (pushed != unbounded) throw Error("wasserstein1: transport network is infeasible (internal error)");

  std::vector<Arc> arcs;
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::int64_t f = net.flow_on(arc_ids[i * cols + j]);
      if (f == 0) continue;
      Rational w(static_cast<std::uint64_t>(f), scale);
      total += w.to_double() * cost[i * cols + j];
      arcs.push_back({i, j, w});
    }
  return TransportPlan{Coupling(m1, m2, std::move(arcs)), total};
}

Assignment assignment_uniform(const UniformTuple& t1, const UniformTuple& t2, const Tolerances& tol) {
  if (t1.size() != t2.size())
    throw InvalidArgument("assignment_uniform: tuple lengths differ (" + std::to_string(t1.size()) + " vs " +
                          std::to_string(t2.size()) + ")");
  if (t1.size() > kMaxAssignment) throw CapacityError("assignment_uniform: tuples longer than 256");
  if (t1.dim() != t2.dim()) throw InvalidArgument("assignment_uniform: dimension mismatch");
  const std::size_t n = t1.size();
  const auto cost = thompson_cost_matrix(t1.entries(), t2.entries(), tol);

  // Shortest augmenting path Hungarian method with row/column potentials,
  // 1-based with a virtual column 0.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  for (std::size_t r = 1; r <= n; ++r) {
    row_of[0] = r;
    std::size_t col = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col] = 1;
      const std::size_t row = row_of[col];
      double delta = kInf;
      std::size_t next = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(row - 1) * n + (j - 1)] - u[row] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          next = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col = next;
    } while (row_of[col] != 0);
    do {
      const std::size_t prev = way[col];
      row_of[col] = row_of[prev];
      col = prev;
    } while (col != 0);
  }

  Assignment out;
  out.perm.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.perm[row_of[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) out.total_cost += cost[i * n + out.perm[i]];
  return out;
}

double plan_cost_bound(const PointMap& f, const DiscreteMeasure& m, const Tolerances& tol) {
  double total = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) total += m.weight(k).to_double() * thompson_dist(m.point(k), f(m.point(k)), tol);
  return total;
}

}  // namespace ordcone
