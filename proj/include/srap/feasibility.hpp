#pragma once

#include <vector>

#include "core.hpp"
#include "maxflow.hpp"
#include "union_find.hpp"

namespace srap {

// Ring positions strictly between lo and hi.
inline VertexMask open_span(VertexMask a) {
  if (a == 0) return 0;
  Interval span = interval_of(a);
  if (span.hi - span.lo < 2) return 0;
  return interval_mask({span.lo + 1, span.hi - 1});
}

inline bool intersecting_masks(VertexMask a, VertexMask b) {
  if (a & b) return true;
  return (a & open_span(b)) != 0 && (b & open_span(a)) != 0;
}

inline bool intersecting(const HyperLink& a, const HyperLink& b) { return intersecting_masks(a.mask(), b.mask()); }

class IntersectionGraph {
 public:
  explicit IntersectionGraph(const std::vector<VertexMask>& sets) : sets_(sets), adj_(sets.size()) {
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j)
        if (intersecting_masks(sets[i], sets[j])) {
          adj_[i].push_back(static_cast<int>(j));
          adj_[j].push_back(static_cast<int>(i));
        }
  }

  int size() const { return static_cast<int>(sets_.size()); }
  const std::vector<int>& neighbors(int i) const { return adj_[i]; }
  VertexMask set(int i) const { return sets_[i]; }

  std::vector<int> containing(int v) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (sets_[i] >> v & 1) out.push_back(i);
    return out;
  }

 private:
  std::vector<VertexMask> sets_;
  std::vector<std::vector<int>> adj_;
};

// Component id per set under the intersection relation.
inline std::vector<int> intersection_components(const std::vector<VertexMask>& sets) {
  UnionFind uf(static_cast<int>(sets.size()));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (intersecting_masks(sets[i], sets[j])) uf.unite(static_cast<int>(i), static_cast<int>(j));
  std::vector<int> comp(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) comp[i] = uf.find(static_cast<int>(i));
  return comp;
}

inline std::vector<VertexMask> masks_of(const std::vector<HyperLink>& hs) {
  std::vector<VertexMask> out;
  out.reserve(hs.size());
  for (const HyperLink& h : hs) out.push_back(h.mask());
  return out;
}

inline bool all_cuts_covered(const SrapInstance& inst, const std::vector<VertexMask>& sets) {
  for (Interval c : dangerous_cuts(inst)) {
    bool ok = false;
    for (VertexMask a : sets)
      if (covers_mask(a, c)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

// Every non-root terminal lies in a set connected in the intersection graph to a set holding the root.
inline bool terminals_reach_root(const SrapInstance& inst, const std::vector<VertexMask>& sets) {
  std::vector<int> comp = intersection_components(sets);
  std::vector<bool> root_comp(sets.size(), false);
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i] & 1) root_comp[comp[i]] = true;
  for (int t : inst.terminals()) {
    if (t == inst.root()) continue;
    bool ok = false;
    for (std::size_t i = 0; i < sets.size() && !ok; ++i)
      ok = (sets[i] >> t & 1) && root_comp[comp[i]];
    if (!ok) return false;
  }
  return true;
}

inline bool is_feasible_hyper(const SrapInstance& inst, const std::vector<HyperLink>& s) {
  return terminals_reach_root(inst, masks_of(s));
}

inline bool is_feasible_hyper_by_cuts(const SrapInstance& inst, const std::vector<HyperLink>& s) {
  return all_cuts_covered(inst, masks_of(s));
}

inline bool is_feasible_directed(const SrapInstance& inst, const std::vector<Arc>& f) {
  for (Interval c : dangerous_cuts(inst)) {
    bool ok = false;
    for (Arc a : f)
      if (enters(a, c)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

inline bool is_feasible_mixed(const SrapInstance& inst, const std::vector<HyperLink>& s, const std::vector<Arc>& f) {
  std::vector<VertexMask> sets = masks_of(s);
  for (Interval c : dangerous_cuts(inst)) {
    bool ok = false;
    for (VertexMask a : sets)
      if (covers_mask(a, c)) {
        ok = true;
        break;
      }
    for (std::size_t i = 0; i < f.size() && !ok; ++i) ok = enters(f[i], c);
    if (!ok) return false;
  }
  return true;
}

// Ring vertices joined by each full component of a link subset: links are grouped
// through shared outside vertices; a ring-ring link is its own component.
inline std::vector<VertexMask> joined_sets(const SrapInstance& inst, const std::vector<int>& link_ids) {
  int n = inst.ring_size();
  UnionFind uf(inst.vertex_count() + static_cast<int>(link_ids.size()));
  int base = inst.vertex_count();
  for (std::size_t k = 0; k < link_ids.size(); ++k) {
    const Link& l = inst.links()[link_ids[k]];
    int node = base + static_cast<int>(k);
    if (l.u >= n) uf.unite(node, l.u);
    if (l.v >= n) uf.unite(node, l.v);
  }
  std::vector<int> owner(inst.vertex_count() + link_ids.size(), -1);
  std::vector<VertexMask> out;
  for (std::size_t k = 0; k < link_ids.size(); ++k) {
    const Link& l = inst.links()[link_ids[k]];
    int r = uf.find(base + static_cast<int>(k));
    if (owner[r] < 0) {
      owner[r] = static_cast<int>(out.size());
      out.push_back(0);
    }
    if (l.u < n) out[owner[r]] |= VertexMask{1} << l.u;
    if (l.v < n) out[owner[r]] |= VertexMask{1} << l.v;
  }
  std::vector<VertexMask> useful;
  for (VertexMask a : out)
    if (std::popcount(a) >= 2) useful.push_back(a);
  return useful;
}

inline bool links_feasible(const SrapInstance& inst, const std::vector<int>& link_ids) {
  return all_cuts_covered(inst, joined_sets(inst, link_ids));
}

inline Multigraph ring_with_links(const SrapInstance& inst, const std::vector<int>& link_ids) {
  Multigraph g;
  g.vertex_count = inst.vertex_count();
  int n = inst.ring_size();
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  for (int id : link_ids) g.edges.emplace_back(inst.links()[id].u, inst.links()[id].v);
  return g;
}

// Certification of a solution: ring plus links is Steiner 3-edge-connected on R.
inline bool verify_solution(const SrapInstance& inst, const std::vector<int>& link_ids) {
  return verify_edge_connectivity(ring_with_links(inst, link_ids), inst.terminals(), 3);
}

}  // namespace srap
