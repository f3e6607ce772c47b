#pragma once

#include <algorithm>
#include <queue>
#include <utility>
#include <vector>

namespace srap {

// Unit-capacity undirected multigraph; each parallel edge carries one unit either way.
class UndirectedFlow {
 public:
  explicit UndirectedFlow(int n) : adj_(n) {}

  void add_edge(int u, int v) {
    if (u == v) return;
    adj_[u].push_back(static_cast<int>(to_.size()));
    to_.push_back(v);
    cap_.push_back(1);
    adj_[v].push_back(static_cast<int>(to_.size()));
    to_.push_back(u);
    cap_.push_back(1);
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }

  // Edmonds-Karp; stops once `limit` units are routed.
  int max_flow(int s, int t, int limit = 1 << 30) {
    if (s == t) return limit;
    std::vector<int> cap = cap_;
    int flow = 0;
    std::vector<int> via(adj_.size());
    while (flow < limit) {
      std::fill(via.begin(), via.end(), -1);
      std::queue<int> q;
      q.push(s);
      via[s] = -2;
      while (!q.empty() && via[t] == -1) {
        int x = q.front();
        q.pop();
        for (int e : adj_[x]) {
          int y = to_[e];
          if (cap[e] > 0 && via[y] == -1) {
            via[y] = e;
            q.push(y);
          }
        }
      }
      if (via[t] == -1) break;
      for (int y = t; y != s; y = to_[via[y] ^ 1]) {
        cap[via[y]] -= 1;
        cap[via[y] ^ 1] += 1;
      }
      ++flow;
    }
    return flow;
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<int> to_;
  std::vector<int> cap_;
};

struct Multigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

inline int local_edge_connectivity(const Multigraph& g, int s, int t, int limit = 1 << 30) {
  UndirectedFlow f(g.vertex_count);
  for (auto [u, v] : g.edges) f.add_edge(u, v);
  return f.max_flow(s, t, limit);
}

// True iff every terminal pair is joined by k edge-disjoint paths. Checking one fixed
// terminal against the others suffices since local connectivity satisfies
// lambda(a,b) >= min(lambda(a,r), lambda(r,b)).
inline bool verify_edge_connectivity(const Multigraph& g, const std::vector<int>& terminals, int k) {
  if (terminals.size() < 2) return true;
  UndirectedFlow f(g.vertex_count);
  for (auto [u, v] : g.edges) f.add_edge(u, v);
  for (std::size_t i = 1; i < terminals.size(); ++i)
    if (f.max_flow(terminals[0], terminals[i], k) < k) return false;
  return true;
}

}  // namespace srap
