#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace pmd {

/// Dinic max flow on a small dense-ish graph. Node ids are 0..size-1.
class FlowNetwork {
 public:
  using Cap = std::int64_t;

  explicit FlowNetwork(std::size_t nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  /// Returns an edge handle usable with flow().
  std::size_t add_edge(std::size_t from, std::size_t to, Cap cap) {
    adj_[from].push_back(edges_.size());
    edges_.push_back({to, cap, 0});
    adj_[to].push_back(edges_.size());
    edges_.push_back({from, 0, 0});
    return edges_.size() - 2;
  }

  Cap flow(std::size_t edge) const { return edges_[edge].flow; }

  Cap max_flow(std::size_t s, std::size_t t) {
    Cap total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (Cap f = dfs(s, t, std::numeric_limits<Cap>::max())) total += f;
    }
    return total;
  }

 private:
  struct Edge {
    std::size_t to;
    Cap cap;
    Cap flow;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto id : adj_[u]) {
        const auto& e = edges_[id];
        if (e.cap > e.flow && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Cap dfs(std::size_t u, std::size_t t, Cap pushed) {
    if (u == t) return pushed;
    for (auto& i = it_[u]; i < adj_[u].size(); ++i) {
      const auto id = adj_[u][i];
      auto& e = edges_[id];
      if (e.cap <= e.flow || level_[e.to] != level_[u] + 1) continue;
      if (Cap f = dfs(e.to, t, std::min(pushed, e.cap - e.flow))) {
        e.flow += f;
        edges_[id ^ 1].flow -= f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace pmd
