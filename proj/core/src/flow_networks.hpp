#pragma once

// Small dense-graph flow solvers shared by transport and stochastic_order.
// Internal header; not installed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace ordcone::detail {

/// Successive shortest paths with Dijkstra on reduced costs. Integer
/// capacities, floating-point costs (nonnegative on input). Arcs are scanned
/// in insertion order and the heap breaks distance ties by node index, so the
/// resulting flow is a deterministic function of the insertion order.
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t nodes) : graph_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap, double cost) {
    const std::size_t id = pos_.size();
    pos_.emplace_back(from, graph_[from].size());
    const std::size_t from_id = graph_[from].size();
    std::size_t to_id = graph_[to].size();
    if (from == to) ++to_id;
    graph_[from].push_back({to, to_id, cap, cost});
    graph_[to].push_back({from, from_id, 0, -cost});
    return id;
  }

  std::int64_t flow_on(std::size_t edge_id) const {
    const auto& e = graph_[pos_[edge_id].first][pos_[edge_id].second];
    return graph_[e.to][e.rev].cap;
  }

  /// Pushes up to `limit` units from s to t at minimum cost; returns the
  /// amount pushed.
  std::int64_t run(std::size_t s, std::size_t t, std::int64_t limit) {
    const std::size_t n = graph_.size();
    std::vector<double> dual(n, 0.0), dist(n);
    std::vector<std::size_t> prev_v(n), prev_e(n);
    std::vector<char> vis(n);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::int64_t flow = 0;
    while (flow < limit) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(vis.begin(), vis.end(), 0);
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
      dist[s] = 0.0;
      heap.emplace(0.0, s);
      while (!heap.empty()) {
        const std::size_t v = heap.top().second;
        heap.pop();
        if (vis[v]) continue;
        vis[v] = 1;
        if (v == t) break;
        for (std::size_t k = 0; k < graph_[v].size(); ++k) {
          const Edge& e = graph_[v][k];
          if (e.cap == 0 || vis[e.to]) continue;
          const double reduced = std::max(0.0, e.cost - dual[e.to] + dual[v]);
          if (dist[e.to] > dist[v] + reduced) {
            dist[e.to] = dist[v] + reduced;
            prev_v[e.to] = v;
            prev_e[e.to] = k;
            heap.emplace(dist[e.to], e.to);
          }
        }
      }
      if (!vis[t]) break;
      for (std::size_t v = 0; v < n; ++v)
        if (vis[v]) dual[v] -= dist[t] - dist[v];

      std::int64_t push = limit - flow;
      for (std::size_t v = t; v != s; v = prev_v[v]) push = std::min(push, graph_[prev_v[v]][prev_e[v]].cap);
      for (std::size_t v = t; v != s; v = prev_v[v]) {
        Edge& e = graph_[prev_v[v]][prev_e[v]];
        e.cap -= push;
        graph_[v][e.rev].cap += push;
      }
      flow += push;
    }
    return flow;
  }

 private:
  struct Edge {
    std::size_t to;
    std::size_t rev;
    std::int64_t cap;
    double cost;
  };
  std::vector<std::vector<Edge>> graph_;
  std::vector<std::pair<std::size_t, std::size_t>> pos_;
};

/// Dinic max flow with integer capacities, plus residual reachability for
/// min-cut extraction.
class MaxFlow {
 public:
  static constexpr std::int64_t kInfCap = std::numeric_limits<std::int64_t>::max() / 4;

  explicit MaxFlow(std::size_t nodes) : graph_(nodes), level_(nodes), iter_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap) {
    const std::size_t id = pos_.size();
    pos_.emplace_back(from, graph_[from].size());
    graph_[from].push_back({to, graph_[to].size(), cap});
    graph_[to].push_back({from, graph_[from].size() - 1, 0});
    return id;
  }

  std::int64_t flow_on(std::size_t edge_id) const {
    const auto& e = graph_[pos_[edge_id].first][pos_[edge_id].second];
    return graph_[e.to][e.rev].cap;
  }

  std::int64_t run(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (std::int64_t f = dfs(s, t, kInfCap)) total += f;
    }
    return total;
  }

  /// Nodes reachable from s through arcs with positive residual capacity.
  std::vector<char> reachable_from(std::size_t s) const {
    std::vector<char> seen(graph_.size(), 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const auto& e : graph_[v])
        if (e.cap > 0 && !seen[e.to]) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    std::size_t rev;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (const auto& e : graph_[v])
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          q.push(e.to);
        }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t v, std::size_t t, std::int64_t pushed) {
    if (v == t) return pushed;
    for (std::size_t& k = iter_[v]; k < graph_[v].size(); ++k) {
      Edge& e = graph_[v][k];
      if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
      if (std::int64_t d = dfs(e.to, t, std::min(pushed, e.cap))) {
        e.cap -= d;
        graph_[e.to][e.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
  std::vector<std::pair<std::size_t, std::size_t>> pos_;
};

}  // namespace ordcone::detail
