#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dp.hpp"
#include "dropcalc.hpp"
#include "feasibility.hpp"
#include "problems.hpp"
#include "steiner.hpp"

namespace srap {

struct OracleBudget {
  int max_links = 20;
  int max_steiner_vertices = 9;
  int max_hyperlinks = 12;
};

struct ExactResult {
  std::optional<Cost> cost;  // absent when no feasible subset exists
  std::vector<int> links;    // sorted link indices
};

inline int priced_link_count(const std::vector<Link>& links) {
  return static_cast<int>(std::count_if(links.begin(), links.end(), [](const Link& l) { return l.cost > 0; }));
}

// Exhaustive search over link subsets in (cost, index) order. `feasible` must be monotone, so
// zero-cost links are always taken and only priced links are enumerated.
inline ExactResult exact_subset_search(const std::vector<Link>& links,
                                       const std::function<bool(const std::vector<int>&)>& feasible) {
  std::vector<int> order, chosen;
  for (int i = 0; i < static_cast<int>(links.size()); ++i) (links[i].cost > 0 ? order : chosen).push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return links[a].cost < links[b].cost; });
  ExactResult best;
  auto rec = [&](auto&& self, std::size_t idx, Cost cost) -> void {
    if (best.cost && cost >= *best.cost) return;
    if (feasible(chosen)) {
      best.cost = cost;
      best.links = chosen;
      return;
    }
    if (idx == order.size()) return;
    std::vector<int> all = chosen;
    all.insert(all.end(), order.begin() + static_cast<long>(idx), order.end());
    if (!feasible(all)) return;
    chosen.push_back(order[idx]);
    self(self, idx + 1, cost + links[order[idx]].cost);
    chosen.pop_back();
    self(self, idx + 1, cost);
  };
  rec(rec, 0, 0);
  std::sort(best.links.begin(), best.links.end());
  return best;
}

inline ExactResult exact_srap(const SrapInstance& inst, OracleBudget budget = {}) {
  if (priced_link_count(inst.links()) > budget.max_links) throw Error("oracle budget exceeded");
  ExactResult r = exact_subset_search(inst.links(), [&](const std::vector<int>& s) { return links_feasible(inst, s); });
  if (r.cost && !verify_solution(inst, r.links)) throw Error("exact solution failed flow verification");
  return r;
}

inline ExactResult exact_scap(const ScapInstance& s, OracleBudget budget = {}) {
  validate(s);
  if (priced_link_count(s.links) > budget.max_links) throw Error("oracle budget exceeded");
  return exact_subset_search(s.links, [&](const std::vector<int>& chosen) { return verify_scap_solution(s, chosen); });
}

inline ExactResult exact_sag(const SagInstance& s, OracleBudget budget = {}) {
  validate(s);
  if (priced_link_count(s.links) > budget.max_links) throw Error("oracle budget exceeded");
  return exact_subset_search(s.links, [&](const std::vector<int>& chosen) { return verify_sag_solution(s, chosen); });
}

// Drop by its definition: arcs all of whose responsible cuts are covered, where an arc is
// responsible for a cut it enters when no arc on the root path to its tail enters it.
inline std::vector<int> brute_force_drop(const SrapInstance& inst, const std::vector<Arc>& f0,
                                         const std::vector<VertexMask>& k) {
  int n = inst.ring_size();
  std::vector<int> in_arc(n, -1);
  for (int i = 0; i < static_cast<int>(f0.size()); ++i) in_arc[f0[i].head] = i;
  std::vector<Interval> cuts = dangerous_cuts(inst);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(f0.size()); ++i) {
    bool all_covered = true;
    for (Interval c : cuts) {
      if (!enters(f0[i], c)) continue;
      bool responsible = true;
      for (int x = f0[i].tail; in_arc[x] >= 0 && responsible; x = f0[in_arc[x]].tail)
        if (enters(f0[in_arc[x]], c)) responsible = false;
      if (!responsible) continue;
      bool covered = std::any_of(k.begin(), k.end(), [&](VertexMask a) { return covers_mask(a, c); });
      if (!covered) {
        all_covered = false;
        break;
      }
    }
    if (all_covered) out.push_back(i);
  }
  return out;
}

inline int cover_count(const std::vector<VertexMask>& k, Interval c) {
  int count = 0;
  for (VertexMask a : k) count += covers_mask(a, c);
  return count;
}

// Some full binary split tree of [1, n-1] has every node covered at most alpha times.
inline bool is_alpha_thin(int n, const std::vector<VertexMask>& k, int alpha) {
  std::vector<std::vector<char>> thin(n, std::vector<char>(n, 0));
  for (int len = 1; len <= n - 1; ++len)
    for (int i = 1; i + len - 1 <= n - 1; ++i) {
      int j = i + len - 1;
      if (cover_count(k, {i, j}) > alpha) continue;
      if (i == j) {
        thin[i][j] = 1;
        continue;
      }
      for (int s = i; s < j && !thin[i][j]; ++s) thin[i][j] = thin[i][s] && thin[s + 1][j];
    }
  return thin[1][n - 1];
}

inline std::vector<VertexMask> masks_at(const std::vector<HyperLink>& hs, const std::vector<int>& idx) {
  std::vector<VertexMask> out;
  for (int i : idx) out.push_back(hs[i].mask());
  return out;
}

inline void for_each_subset(int count, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> subset;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << count); ++bits) {
    subset.clear();
    for (int i = 0; i < count; ++i)
      if (bits >> i & 1) subset.push_back(i);
    visit(subset);
  }
}

inline SlackResult brute_force_max_slack(const SrapInstance& inst, const std::vector<Arc>& f0,
                                         const std::vector<HyperLink>& hs, const std::vector<Cost>& arc_weight,
                                         int alpha, Cost hyper_scale = 1, OracleBudget budget = {}) {
  if (static_cast<int>(hs.size()) > budget.max_hyperlinks) throw Error("oracle budget exceeded");
  SlackResult best;
  for_each_subset(static_cast<int>(hs.size()), [&](const std::vector<int>& k) {
    std::vector<VertexMask> sets = masks_at(hs, k);
    if (!is_alpha_thin(inst.ring_size(), sets, alpha)) return;
    Cost value = 0;
    for (int i : brute_force_drop(inst, f0, sets)) value += arc_weight[i];
    for (int h : k) value -= hyper_scale * hs[h].cost;
    if (value > best.value) best = {k, value};
  });
  return best;
}

inline RatioResult brute_force_min_ratio(const SrapInstance& inst, const std::vector<Arc>& f0,
                                         const std::vector<HyperLink>& hs, const std::vector<bool>& live,
                                         const std::vector<Cost>& arc_cost, int alpha, OracleBudget budget = {}) {
  if (static_cast<int>(hs.size()) > budget.max_hyperlinks) throw Error("oracle budget exceeded");
  RatioResult best;
  for_each_subset(static_cast<int>(hs.size()), [&](const std::vector<int>& k) {
    std::vector<VertexMask> sets = masks_at(hs, k);
    if (!is_alpha_thin(inst.ring_size(), sets, alpha)) return;
    Cost den = 0;
    for (int i : brute_force_drop(inst, f0, sets))
      if (live[i]) den += arc_cost[i];
    if (den == 0) return;
    Cost num = 0;
    for (int h : k) num += hs[h].cost;
    Ratio r{num, den};
    if (r < best.ratio) {
      best.ratio = r;
      best.chosen = k;
    }
  });
  return best;
}

// Minimum Steiner tree as the best spanning tree over every vertex set containing the terminals.
inline std::optional<SteinerTree> steiner_tree_bruteforce(int vertex_count, const std::vector<WeightedEdge>& edges,
                                                          const std::vector<int>& terminals, OracleBudget budget = {}) {
  if (vertex_count > budget.max_steiner_vertices) throw Error("oracle budget exceeded");
  if (terminals.size() <= 1) return SteinerTree{};
  VertexMask must = 0;
  for (int t : terminals) must |= VertexMask{1} << t;
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return edges[a].cost < edges[b].cost; });
  std::optional<SteinerTree> best;
  for (VertexMask set = 0; set < (VertexMask{1} << vertex_count); ++set) {
    if ((set & must) != must) continue;
    UnionFind uf(vertex_count);
    SteinerTree t;
    for (int e : order) {
      const WeightedEdge& we = edges[e];
      if (!(set >> we.u & 1) || !(set >> we.v & 1)) continue;
      if (uf.unite(we.u, we.v)) {
        t.cost += we.cost;
        t.edges.push_back(we.id);
      }
    }
    bool connected = true;
    for (int v : mask_vertices(set)) connected = connected && uf.same(v, terminals[0]);
    if (!connected) continue;
    if (!best || t.cost < best->cost) {
      std::sort(t.edges.begin(), t.edges.end());
      best = t;
    }
  }
  return best;
}

}  // namespace srap
