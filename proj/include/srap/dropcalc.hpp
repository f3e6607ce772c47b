#pragma once

#include <vector>

#include "feasibility.hpp"
#include "rspecial.hpp"

namespace srap {

struct ResponsibilityIndex {
  std::vector<std::vector<Interval>> cuts_of;  // per arc of the solution
  std::vector<std::pair<Interval, int>> owner;  // per dangerous cut, in enumeration order
};

struct ArtificialExtension {
  std::vector<int> parent;  // over ring vertices; -1 at the root
  std::vector<Arc> artificial;
};

// Drop queries against a fixed R-special directed solution.
class DropContext {
 public:
  DropContext(const SrapInstance& inst, std::vector<Arc> arcs) : n_(inst.ring_size()), arcs_(std::move(arcs)) {
    if (!check_r_special(inst, arcs_)) throw Error("directed solution is not R-special");
    in_arc_.assign(n_, -1);
    std::vector<int> f0_parent(n_, -1);
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
      in_arc_[arcs_[i].head] = i;
      f0_parent[arcs_[i].head] = arcs_[i].tail;
    }
    terminal_.assign(n_, false);
    for (int t : inst.terminals()) terminal_[t] = true;
    auto is_descendant = [&](int x, int v) {
      for (; x >= 0; x = f0_parent[x])
        if (x == v) return true;
      return false;
    };
    bad_.assign(n_, Interval{-1, -1});
    for (int v : inst.terminals()) {
      int lo = 0, hi = n_ - 1;
      for (int t : inst.terminals()) {
        if (is_descendant(t, v)) continue;
        if (t < v) lo = std::max(lo, t + 1);
        if (t > v) hi = std::min(hi, t - 1);
      }
      bad_[v] = {lo, hi};
    }
    for (int a : inst.terminals())
      for (int b : inst.terminals()) {
        Interval x = bad_[a], y = bad_[b];
        bool disjoint = x.hi < y.lo || y.hi < x.lo;
        bool nested = (x.lo <= y.lo && y.hi <= x.hi) || (y.lo <= x.lo && x.hi <= y.hi);
        if (!disjoint && !nested) throw Error("bad intervals are not laminar");
      }
    ext_.parent = f0_parent;
    std::vector<int> owner(n_, -1);
    for (int u = 0; u < n_; ++u) {
      if (terminal_[u]) continue;
      for (int v : inst.terminals())
        if (bad_[v].contains(u) && (owner[u] < 0 || bad_[v].length() < bad_[owner[u]].length())) owner[u] = v;
    }
    for (int v : inst.terminals()) {
      int prev = v;
      for (int u = v - 1; u >= 0; --u)
        if (owner[u] == v) {
          ext_.parent[u] = prev;
          ext_.artificial.push_back({prev, u});
          prev = u;
        }
      prev = v;
      for (int u = v + 1; u < n_; ++u)
        if (owner[u] == v) {
          ext_.parent[u] = prev;
          ext_.artificial.push_back({prev, u});
          prev = u;
        }
    }
    depth_.assign(n_, -1);
    for (int v = 0; v < n_; ++v) depth_of(v);
  }

  int ring_size() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  int in_arc(int v) const { return in_arc_[v]; }
  Interval bad_interval(int v) const {
    if (v < 0 || v >= n_ || !terminal_[v]) throw Error("bad interval requested for a non-terminal");
    return bad_[v];
  }
  const ArtificialExtension& extension() const { return ext_; }

  int lca(int a, int b) const {
    while (depth_[a] > depth_[b]) a = ext_.parent[a];
    while (depth_[b] > depth_[a]) b = ext_.parent[b];
    while (a != b) {
      a = ext_.parent[a];
      b = ext_.parent[b];
    }
    return a;
  }
  int lca(VertexMask a) const {
    if (a == 0) throw Error("lca of an empty set");
    int x = std::countr_zero(a);
    for (a &= a - 1; a; a &= a - 1) x = lca(x, std::countr_zero(a));
    return x;
  }

  // Arc indices dropped by hyper-link sets `sets` (path criterion).
  std::vector<int> drop(const std::vector<VertexMask>& sets) const {
    std::vector<int> comp = intersection_components(sets);
    std::vector<VertexMask> reach(sets.size(), 0);
    for (std::size_t i = 0; i < sets.size(); ++i) reach[comp[i]] |= sets[i];
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
      int v = arcs_[i].head;
      VertexMask good = ~interval_mask(bad_[v]);
      for (std::size_t k = 0; k < sets.size(); ++k)
        if ((sets[k] >> v & 1) && (reach[comp[k]] & good)) {
          out.push_back(i);
          break;
        }
    }
    return out;
  }

  // Drop of a set connected in the intersection graph, via its extended lca.
  std::vector<int> drop_connected_lca(const std::vector<VertexMask>& sets) const {
    if (sets.empty()) return {};
    std::vector<int> comp = intersection_components(sets);
    VertexMask all = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (comp[i] != comp[0]) throw Error("hyper-links are not connected in the intersection graph");
      all |= sets[i];
    }
    int top = lca(all);
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(arcs_.size()); ++i)
      if ((all >> arcs_[i].head & 1) && arcs_[i].head != top) out.push_back(i);
    return out;
  }

  ResponsibilityIndex responsibility(const SrapInstance& inst) const {
    ResponsibilityIndex r;
    r.cuts_of.assign(arcs_.size(), {});
    for (Interval c : dangerous_cuts(inst)) {
      int found = -1;
      for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
        int v = arcs_[i].head;
        Interval b = bad_[v];
        if (c.contains(v) && b.lo <= c.lo && c.hi <= b.hi) {
          if (found >= 0) throw Error("cut has two responsible links");
          found = i;
        }
      }
      if (found < 0) throw Error("cut has no responsible link");
      r.cuts_of[found].push_back(c);
      r.owner.push_back({c, found});
    }
    return r;
  }

 private:
  int depth_of(int v) {
    if (depth_[v] >= 0) return depth_[v];
    if (ext_.parent[v] < 0) {
      if (v != 0) throw Error("artificial extension does not reach vertex " + std::to_string(v));
      return depth_[v] = 0;
    }
    return depth_[v] = depth_of(ext_.parent[v]) + 1;
  }

  int n_;
  std::vector<Arc> arcs_;
  std::vector<int> in_arc_;
  std::vector<bool> terminal_;
  std::vector<Interval> bad_;
  ArtificialExtension ext_;
  std::vector<int> depth_;
};

inline Interval v_bad_interval(const SrapInstance& inst, const std::vector<Arc>& f0, int v) {
  return DropContext(inst, f0).bad_interval(v);
}

inline std::vector<Arc> arcs_at(const std::vector<Arc>& arcs, const std::vector<int>& idx) {
  std::vector<Arc> out;
  for (int i : idx) out.push_back(arcs[i]);
  return out;
}

}  // namespace srap
