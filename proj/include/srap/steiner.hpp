#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "core.hpp"
#include "paths.hpp"
#include "union_find.hpp"

namespace srap {

inline int ceil_reciprocal(double eps) {
  if (!(eps > 0)) throw Error("epsilon must be positive");
  // Guard against 1/eps landing a hair above an integer through rounding.
  return static_cast<int>(std::ceil(1.0 / eps - 1e-9));
}

inline long long saturating_pow2(int e) {
  if (e >= 62) return std::numeric_limits<long long>::max();
  return 1LL << e;
}

inline long long gamma_for(double eps) { return saturating_pow2(ceil_reciprocal(eps)); }

struct WeightedEdge {
  int u = 0;
  int v = 0;
  Cost cost = 0;
  int id = -1;
};

struct SteinerTree {
  Cost cost = 0;
  std::vector<int> edges;  // edge ids, sorted
};

namespace detail {

// Drops cycles (keeping the cheaper, lower-id edges) and then non-terminal leaves.
inline SteinerTree prune_to_tree(int vertex_count, const std::vector<WeightedEdge>& edges,
                                 std::vector<int> chosen, const std::vector<bool>& is_terminal) {
  std::sort(chosen.begin(), chosen.end(), [&](int a, int b) {
    return std::pair(edges[a].cost, edges[a].id) < std::pair(edges[b].cost, edges[b].id);
  });
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  UnionFind uf(vertex_count);
  std::vector<int> forest;
  for (int e : chosen)
    if (uf.unite(edges[e].u, edges[e].v)) forest.push_back(e);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> degree(vertex_count, 0);
    for (int e : forest) {
      ++degree[edges[e].u];
      ++degree[edges[e].v];
    }
    std::vector<int> kept;
    for (int e : forest) {
      bool leaf_u = degree[edges[e].u] == 1 && !is_terminal[edges[e].u];
      bool leaf_v = degree[edges[e].v] == 1 && !is_terminal[edges[e].v];
      if (leaf_u || leaf_v) {
        changed = true;
      } else {
        kept.push_back(e);
      }
    }
    forest = std::move(kept);
  }
  SteinerTree t;
  for (int e : forest) {
    t.cost += edges[e].cost;
    t.edges.push_back(edges[e].id);
  }
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

}  // namespace detail

// Dreyfus-Wagner over a small graph; returned edge ids are the `id` fields.
inline std::optional<SteinerTree> dreyfus_wagner(int vertex_count, const std::vector<WeightedEdge>& edges,
                                                 const std::vector<int>& terminals) {
  int k = static_cast<int>(terminals.size());
  if (k == 0) return SteinerTree{};
  if (k > 20) throw Error("too many terminals for Dreyfus-Wagner");
  std::vector<std::vector<std::optional<Cost>>> w(vertex_count, std::vector<std::optional<Cost>>(vertex_count));
  std::vector<std::vector<int>> edge_at(vertex_count, std::vector<int>(vertex_count, -1));
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const WeightedEdge& we = edges[e];
    if (we.u == we.v) continue;
    if (!w[we.u][we.v] || we.cost < *w[we.u][we.v]) {
      w[we.u][we.v] = w[we.v][we.u] = we.cost;
      edge_at[we.u][we.v] = edge_at[we.v][we.u] = e;
    }
  }
  detail::LexShortestPaths sp(w);
  for (int t : terminals)
    if (!sp.dist(terminals[0], t)) return std::nullopt;
  if (k == 1) return SteinerTree{};

  const Cost inf = std::numeric_limits<Cost>::max() / 4;
  int full = (1 << k) - 1;
  std::vector<std::vector<Cost>> dp(full + 1, std::vector<Cost>(vertex_count, inf));
  std::vector<std::vector<int>> split(full + 1, std::vector<int>(vertex_count, 0));
  std::vector<std::vector<int>> from(full + 1, std::vector<int>(vertex_count, -1));
  for (int s = 1; s <= full; ++s) {
    std::vector<Cost> g(vertex_count, inf);
    if ((s & (s - 1)) == 0) {
      g[terminals[std::countr_zero(static_cast<unsigned>(s))]] = 0;
    } else {
      for (int v = 0; v < vertex_count; ++v)
        for (int sub = (s - 1) & s; sub > 0; sub = (sub - 1) & s) {
          if (sub < (s ^ sub)) continue;
          Cost c = dp[sub][v] + dp[s ^ sub][v];
          if (c < g[v]) {
            g[v] = c;
            split[s][v] = sub;
          }
        }
    }
    for (int v = 0; v < vertex_count; ++v)
      for (int u = 0; u < vertex_count; ++u) {
        if (g[u] >= inf || !sp.dist(u, v)) continue;
        Cost c = g[u] + sp.dist(u, v)->cost;
        if (c < dp[s][v]) {
          dp[s][v] = c;
          from[s][v] = u;
        }
      }
  }

  std::vector<int> chosen;
  std::vector<std::pair<int, int>> stack{{full, terminals[0]}};
  while (!stack.empty()) {
    auto [s, v] = stack.back();
    stack.pop_back();
    int u = from[s][v];
    std::vector<int> p = sp.path(u, v);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) chosen.push_back(edge_at[p[i]][p[i + 1]]);
    if ((s & (s - 1)) != 0) {
      stack.push_back({split[s][u], u});
      stack.push_back({s ^ split[s][u], u});
    }
  }
  std::vector<bool> is_terminal(vertex_count, false);
  for (int t : terminals) is_terminal[t] = true;
  SteinerTree t = detail::prune_to_tree(vertex_count, edges, chosen, is_terminal);
  if (t.cost != dp[full][terminals[0]]) throw Error("Dreyfus-Wagner reconstruction mismatch");
  return t;
}

class HyperSrapInstance {
 public:
  HyperSrapInstance() = default;
  HyperSrapInstance(SrapInstance base, std::vector<HyperLink> hyperlinks, int gamma)
      : base_(std::move(base)), hyperlinks_(std::move(hyperlinks)), gamma_(gamma) {}

  const SrapInstance& base() const { return base_; }
  const std::vector<HyperLink>& hyperlinks() const { return hyperlinks_; }
  int gamma() const { return gamma_; }

 private:
  SrapInstance base_;
  std::vector<HyperLink> hyperlinks_;
  int gamma_ = 2;
};

// Cheapest full component joining exactly the ring vertices of `a` (other ring vertices unusable).
inline std::optional<HyperLink> cheapest_full_component(const SrapInstance& inst, VertexMask a) {
  int n = inst.ring_size();
  int m = inst.outside_count();
  std::vector<int> ring = mask_vertices(a);
  std::vector<int> local(inst.vertex_count(), -1);
  for (std::size_t i = 0; i < ring.size(); ++i) local[ring[i]] = static_cast<int>(i);
  for (int x = 0; x < m; ++x) local[n + x] = static_cast<int>(ring.size()) + x;
  int count = static_cast<int>(ring.size()) + m;
  std::vector<WeightedEdge> edges;
  UnionFind uf(count);
  for (int i = 0; i < static_cast<int>(inst.links().size()); ++i) {
    const Link& l = inst.links()[i];
    if (local[l.u] < 0 || local[l.v] < 0) continue;
    edges.push_back({local[l.u], local[l.v], l.cost, i});
    uf.unite(local[l.u], local[l.v]);
  }
  for (std::size_t i = 1; i < ring.size(); ++i)
    if (!uf.same(0, static_cast<int>(i))) return std::nullopt;
  std::vector<int> terms(ring.size());
  std::iota(terms.begin(), terms.end(), 0);
  auto tree = dreyfus_wagner(count, edges, terms);
  if (!tree) return std::nullopt;
  return HyperLink{ring, tree->cost, tree->edges};
}

inline HyperSrapInstance generate_hyperlinks(const SrapInstance& inst, int gamma) {
  if (gamma < 2) throw Error("gamma must be at least 2");
  int n = inst.ring_size();
  std::vector<HyperLink> out;
  std::vector<int> pick;
  // Subsets in lexicographic order of their sorted vertex sequence.
  auto rec = [&](auto&& self, int next, VertexMask mask) -> void {
    if (pick.size() >= 2) {
      if (auto h = cheapest_full_component(inst, mask)) out.push_back(std::move(*h));
    }
    if (static_cast<int>(pick.size()) == gamma) return;
    for (int v = next; v < n; ++v) {
      pick.push_back(v);
      self(self, v + 1, mask | VertexMask{1} << v);
      pick.pop_back();
    }
  };
  rec(rec, 0, 0);
  return HyperSrapInstance(inst, std::move(out), gamma);
}

inline std::vector<int> realize_solution(const std::vector<HyperLink>& s) {
  std::vector<int> links;
  for (const HyperLink& h : s) {
    if (h.realization.empty()) throw Error("hyper-link without realization");
    links.insert(links.end(), h.realization.begin(), h.realization.end());
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  return links;
}

}  // namespace srap
