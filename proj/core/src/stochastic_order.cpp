#include "ordcone/stochastic_order.hpp"

#include <limits>
#include <queue>
#include <string>

#include "flow_networks.hpp"
#include "ordcone/errors.hpp"

namespace ordcone {
namespace {

// leq[i * right.size() + j] == loewner_leq(left[i], right[j]).
std::vector<char> comparability(const std::vector<PDMatrix>& left, const std::vector<PDMatrix>& right,
                                const Tolerances& tol) {
  std::vector<char> leq(left.size() * right.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) leq[i * right.size() + j] = loewner_leq(left[i], right[j], tol);
  return leq;
}

void require_compatible(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const char* op) {
  if (mu.dim() != nu.dim()) throw InvalidArgument(std::string(op) + ": dimension mismatch");
}

class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t n, std::vector<std::vector<std::size_t>> adj)
      : n_(n), adj_(std::move(adj)), match_l_(n, kNone), match_r_(n, kNone), dist_(n) {}

  std::size_t run() {
    std::size_t size = 0;
    while (bfs())
      for (std::size_t u = 0; u < n_; ++u)
        if (match_l_[u] == kNone && dfs(u)) ++size;
    return size;
  }

  const std::vector<std::size_t>& match_left() const { return match_l_; }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < n_; ++u) {
      if (match_l_[u] == kNone) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kNone;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_r_[v];
        if (w == kNone) {
          found = true;
        } else if (dist_[w] == kNone) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_r_[v];
      if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = kNone;
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_l_, match_r_, dist_;
};

}  // namespace

std::vector<std::size_t> upper_closure(const std::vector<std::size_t>& subset,
                                       const std::vector<PDMatrix>& left_support,
                                       const std::vector<PDMatrix>& right_support, const Tolerances& tol) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < right_support.size(); ++j)
    for (std::size_t i : subset) {
      if (loewner_leq(left_support.at(i), right_support[j], tol)) {
        out.push_back(j);
        break;
      }
    }
  return out;
}

OrderCertificate stochastic_leq_flow(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Tolerances& tol) {
  require_compatible(mu, nu, "stochastic_leq_flow");
  if (mu.size() > kMaxOrderSupport || nu.size() > kMaxOrderSupport)
    throw CapacityError("stochastic_leq_flow: support exceeds 512 points");
  const std::uint64_t scale = checked_lcm(mu.common_denominator(), nu.common_denominator());
  const std::size_t rows = mu.size(), cols = nu.size();
  const auto leq = comparability(mu.points(), nu.points(), tol);

  const std::size_t source = 0, sink = rows + cols + 1;
  detail::MaxFlow net(rows + cols + 2);
  for (std::size_t i = 0; i < rows; ++i)
    net.add_edge(source, 1 + i, static_cast<std::int64_t>(scaled_integer(mu.weight(i), scale)));
  std::vector<std::size_t> arc_ids(rows * cols, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (leq[i * cols + j]) arc_ids[i * cols + j] = net.add_edge(1 + i, 1 + rows + j, detail::MaxFlow::kInfCap);
  for (std::size_t j = 0; j < cols; ++j)
    net.add_edge(1 + rows + j, sink, static_cast<std::int64_t>(scaled_integer(nu.weight(j), scale)));

  const std::int64_t flow = net.run(source, sink);
  OrderCertificate cert;
  cert.verdict = flow == static_cast<std::int64_t>(scale);
  if (cert.verdict) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (!leq[i * cols + j]) continue;
        const std::int64_t f = net.flow_on(arc_ids[i * cols + j]);
        if (f > 0) arcs.push_back({i, j, Rational(static_cast<std::uint64_t>(f), scale)});
      }
    cert.witness.emplace(mu, nu, std::move(arcs));
  } else {
    const auto seen = net.reachable_from(source);
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < rows; ++i)
      if (seen[1 + i]) subset.push_back(i);
    cert.violating_subset = std::move(subset);
  }
  return cert;
}

bool stochastic_leq_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Tolerances& tol) {
  require_compatible(mu, nu, "stochastic_leq_bruteforce");
  if (mu.size() > kMaxBruteforceSupport)
    throw CapacityError("stochastic_leq_bruteforce: left support exceeds 20 points");
  const std::size_t rows = mu.size(), cols = nu.size();
  const auto leq = comparability(mu.points(), nu.points(), tol);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << rows); ++mask) {
    Rational lhs, rhs;
    for (std::size_t i = 0; i < rows; ++i)
      if (mask >> i & 1u) lhs += mu.weight(i);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i)
        if ((mask >> i & 1u) && leq[i * cols + j]) {
          rhs += nu.weight(j);
          break;
        }
    if (lhs > rhs) return false;
  }
  return true;
}

std::optional<std::vector<std::size_t>> hall_matching(const UniformTuple& t1, const UniformTuple& t2,
                                                      const Tolerances& tol) {
  if (t1.size() != t2.size()) throw InvalidArgument("hall_matching: tuple lengths differ");
  if (t1.size() > 256) throw CapacityError("hall_matching: tuples longer than 256");
  if (t1.dim() != t2.dim()) throw InvalidArgument("hall_matching: dimension mismatch");
  const std::size_t n = t1.size();
  const auto leq = comparability(t1.entries(), t2.entries(), tol);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i * n + j]) adj[i].push_back(j);
  HopcroftKarp hk(n, std::move(adj));
  if (hk.run() != n) return std::nullopt;
  return hk.match_left();
}

bool certificate_is_sound(const OrderCertificate& cert, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const Tolerances& tol) {
  if (cert.verdict) {
    if (!cert.witness || cert.violating_subset) return false;
    const Coupling& c = *cert.witness;
    if (!same_measure(c.left(), mu, tol) || !same_measure(c.right(), nu, tol)) return false;
    for (const auto& arc : c.arcs())
      if (!loewner_leq(c.left().point(arc.i), c.right().point(arc.j), tol)) return false;
    return true;
  }
  if (cert.witness || !cert.violating_subset) return false;
  const auto& subset = *cert.violating_subset;
  Rational lhs, rhs;
  for (std::size_t i : subset) {
    if (i >= mu.size()) return false;
    lhs += mu.weight(i);
  }
  for (std::size_t j : upper_closure(subset, mu.points(), nu.points(), tol)) rhs += nu.weight(j);
  return lhs > rhs;
}

}  // namespace ordcone
