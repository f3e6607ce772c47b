#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "completion.hpp"
#include "feasibility.hpp"
#include "steiner.hpp"

namespace srap {

// Closed walk seq[0] -> seq[1] -> ... -> seq.back() -> seq[0] over ring vertices.
struct DirectedCycle {
  std::vector<int> seq;

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    if (seq.size() < 2) return out;
    for (std::size_t i = 0; i < seq.size(); ++i) out.push_back({seq[i], seq[(i + 1) % seq.size()]});
    return out;
  }
  VertexMask nodes() const {
    VertexMask m = 0;
    for (int v : seq) m |= VertexMask{1} << v;
    return m;
  }
};

inline Cost arcs_cost(const CompleteInstance& ci, const std::vector<Arc>& arcs) {
  Cost total = 0;
  for (Arc a : arcs) total += ci.cost_of(a);
  return total;
}

inline Cost cycle_cost(const CompleteInstance& ci, const DirectedCycle& c) { return arcs_cost(ci, c.arcs()); }

struct FullComponent {
  std::vector<int> links;  // original link indices forming a tree
  VertexMask ring_nodes = 0;
};

// Full components of a link set, each reduced to a tree whose leaves are ring vertices.
inline std::vector<FullComponent> full_components(const SrapInstance& inst, const std::vector<int>& link_ids) {
  int n = inst.ring_size();
  int total = inst.vertex_count();
  UnionFind uf(total + static_cast<int>(link_ids.size()));
  for (std::size_t k = 0; k < link_ids.size(); ++k) {
    const Link& l = inst.links()[link_ids[k]];
    int node = total + static_cast<int>(k);
    if (l.u >= n) uf.unite(node, l.u);
    if (l.v >= n) uf.unite(node, l.v);
  }
  std::map<int, std::vector<int>> groups;
  for (std::size_t k = 0; k < link_ids.size(); ++k) groups[uf.find(total + static_cast<int>(k))].push_back(link_ids[k]);
  std::vector<FullComponent> out;
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < static_cast<int>(inst.links().size()); ++i) {
    const Link& l = inst.links()[i];
    edges.push_back({l.u, l.v, l.cost, i});
  }
  std::vector<bool> is_ring(total, false);
  for (int v = 0; v < n; ++v) is_ring[v] = true;
  for (auto& [key, ids] : groups) {
    SteinerTree t = detail::prune_to_tree(total, edges, ids, is_ring);
    FullComponent fc{t.edges, 0};
    for (int id : t.edges) {
      const Link& l = inst.links()[id];
      if (l.u < n) fc.ring_nodes |= VertexMask{1} << l.u;
      if (l.v < n) fc.ring_nodes |= VertexMask{1} << l.v;
    }
    if (std::popcount(fc.ring_nodes) >= 2) out.push_back(std::move(fc));
  }
  std::sort(out.begin(), out.end(), [](const FullComponent& a, const FullComponent& b) { return a.links < b.links; });
  return out;
}

struct EulerTour {
  std::vector<int> order;                   // ring vertices by first visit
  std::vector<std::pair<int, int>> subpaths;  // per tree link: the two subpaths traversing it
};

// Euler tour of a tree from its smallest ring vertex, neighbours in increasing order.
// Subpath i runs from order[i] to order[(i+1) % k].
inline EulerTour euler_tour(const SrapInstance& inst, const std::vector<int>& tree_links) {
  int n = inst.ring_size();
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbour, position in tree_links)
  int start = -1;
  for (int k = 0; k < static_cast<int>(tree_links.size()); ++k) {
    const Link& l = inst.links()[tree_links[k]];
    adj[l.u].push_back({l.v, k});
    adj[l.v].push_back({l.u, k});
    for (int x : {l.u, l.v})
      if (x < n && (start < 0 || x < start)) start = x;
  }
  if (start < 0) throw Error("full component without ring vertices");
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  EulerTour tour;
  tour.subpaths.assign(tree_links.size(), {-1, -1});
  std::set<int> visited;
  int current = 0;
  auto record = [&](int k) {
    auto& slot = tour.subpaths[k];
    (slot.first < 0 ? slot.first : slot.second) = current;
  };
  std::function<void(int, int)> dfs = [&](int v, int via) {
    visited.insert(v);
    if (v < n) {
      tour.order.push_back(v);
      current = static_cast<int>(tour.order.size()) - 1;
    }
    for (auto [w, k] : adj[v]) {
      if (k == via) continue;
      if (visited.count(w)) throw Error("full component is not a tree");
      record(k);
      dfs(w, k);
      record(k);
    }
  };
  dfs(start, -1);
  return tour;
}

inline DirectedCycle euler_cycle(const SrapInstance& inst, const std::vector<int>& tree_links) {
  return DirectedCycle{euler_tour(inst, tree_links).order};
}

inline bool arc_leaves(Arc a, Interval i) { return i.contains(a.tail) && !i.contains(a.head); }

// Cycle on S u A from two cycles whose node sets intersect as hyper-links; `s` must hold the root.
inline DirectedCycle merge_cycles(const DirectedCycle& s, const DirectedCycle& a) {
  VertexMask sm = s.nodes(), am = a.nodes();
  if (!intersecting_masks(sm, am)) throw Error("cycles to merge are not intersecting");
  std::vector<int> out;
  if (sm & am) {
    std::size_t i = 0;
    while (!(am >> s.seq[i] & 1)) ++i;
    int x = s.seq[i];
    std::size_t t = std::find(a.seq.begin(), a.seq.end(), x) - a.seq.begin();
    out.assign(s.seq.begin(), s.seq.begin() + i + 1);
    for (std::size_t k = 1; k <= a.seq.size(); ++k) out.push_back(a.seq[(t + k) % a.seq.size()]);
    out.insert(out.end(), s.seq.begin() + i + 1, s.seq.end());
    return DirectedCycle{out};
  }
  Interval ia = interval_of(am);
  std::vector<Arc> sa = s.arcs(), aa = a.arcs();
  std::size_t i = 0;
  while (i < sa.size() && !arc_leaves(sa[i], ia)) ++i;
  if (i == sa.size()) throw Error("root cycle never leaves the other cycle's interval");
  Interval star = interval_of(std::vector<int>{sa[i].tail, sa[i].head});
  std::size_t j = 0;
  while (j < aa.size() && !arc_leaves(aa[j], star)) ++j;
  if (j == aa.size()) throw Error("cycle never leaves the spliced interval");
  out.assign(s.seq.begin(), s.seq.begin() + i + 1);
  for (std::size_t k = 1; k <= a.seq.size(); ++k) out.push_back(a.seq[(j + k) % a.seq.size()]);
  out.insert(out.end(), s.seq.begin() + i + 1, s.seq.end());
  return DirectedCycle{out};
}

inline std::vector<Arc> unique_arcs(std::vector<Arc> arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return arcs;
}

inline DirectedCycle build_terminal_cycle(const CompleteInstance& ci, const std::vector<int>& solution_links) {
  const SrapInstance& inst = ci.base();
  if (!links_feasible(inst, solution_links)) throw Error("initial solution is infeasible");
  if (inst.terminals().size() == 1) return {};
  std::vector<DirectedCycle> cycles;
  for (const FullComponent& fc : full_components(inst, solution_links))
    cycles.push_back(euler_cycle(inst, fc.links));
  std::vector<bool> merged(cycles.size(), false);
  std::size_t root = 0;
  while (root < cycles.size() && !(cycles[root].nodes() & 1)) ++root;
  if (root == cycles.size()) throw Error("no full component reaches the root");
  DirectedCycle current = cycles[root];
  merged[root] = true;
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t k = 0; k < cycles.size(); ++k) {
      if (merged[k] || !intersecting_masks(current.nodes(), cycles[k].nodes())) continue;
      current = merge_cycles(current, cycles[k]);
      merged[k] = true;
      progress = true;
      break;
    }
  }
  if (!is_feasible_directed(inst, current.arcs())) throw Error("merged cycle is infeasible");
  DirectedCycle shortcut;
  for (int v : current.seq)
    if (inst.is_terminal(v) && (shortcut.seq.empty() || shortcut.seq.back() != v)) shortcut.seq.push_back(v);
  while (shortcut.seq.size() > 1 && shortcut.seq.back() == shortcut.seq.front()) shortcut.seq.pop_back();
  if (shortcut.nodes() != inst.terminal_mask()) throw Error("terminal cycle misses a terminal");
  if (!is_feasible_directed(inst, shortcut.arcs())) throw Error("terminal cycle is infeasible");
  return shortcut;
}

// One step of the delete/shorten reduction; `to` is absent for deletions.
struct ShortenEvent {
  Arc from;
  std::optional<Arc> to;
};

// Deletes, else shortens toward the head onto terminal tails, while feasible.
inline std::vector<Arc> make_nonshortenable(const CompleteInstance& ci, std::vector<Arc> f,
                                            std::vector<ShortenEvent>* events = nullptr) {
  const SrapInstance& inst = ci.base();
  f = unique_arcs(std::move(f));
  for (Arc a : f)
    if (!inst.is_terminal(a.tail) || !inst.is_terminal(a.head)) throw Error("arc not incident only on terminals");
  if (!is_feasible_directed(inst, f)) throw Error("directed solution is infeasible");
  auto order = [&](std::vector<Arc> arcs) {
    std::sort(arcs.begin(), arcs.end(), [&](Arc x, Arc y) {
      Cost cx = ci.cost_of(x), cy = ci.cost_of(y);
      if (cx != cy) return cx > cy;
      return x < y;
    });
    return arcs;
  };
  for (;;) {
    bool moved = false;
    for (Arc a : order(f)) {
      std::vector<Arc> g;
      for (Arc b : f)
        if (!(b == a)) g.push_back(b);
      if (is_feasible_directed(inst, g)) {
        f = std::move(g);
        if (events) events->push_back({a, std::nullopt});
        moved = true;
        break;
      }
    }
    if (moved) continue;
    for (Arc a : order(f)) {
      int step = a.head > a.tail ? -1 : 1;
      for (int s = a.head + step; s != a.tail && !moved; s += step) {
        if (!inst.is_terminal(s)) continue;
        Arc b{s, a.head};
        if (std::find(f.begin(), f.end(), b) != f.end()) continue;
        if (ci.cost_of(b) > ci.cost_of(a)) throw Error("shortening costs more than its link");
        std::vector<Arc> g;
        for (Arc x : f) g.push_back(x == a ? b : x);
        if (is_feasible_directed(inst, g)) {
          f = unique_arcs(std::move(g));
          if (events) events->push_back({a, b});
          moved = true;
        }
      }
      if (moved) break;
    }
    if (!moved) break;
  }
  return f;
}

struct RSpecialReport {
  bool terminals_only = false;
  bool arborescence = false;
  bool planar = false;
  bool one_per_direction = false;
  bool ok() const { return terminals_only && arborescence && planar && one_per_direction; }
};

// Chords {a,b} and {c,d} cross iff they share no endpoint and exactly one of c,d lies strictly inside.
inline bool chords_cross(Arc x, Arc y) {
  int lo = std::min(x.tail, x.head), hi = std::max(x.tail, x.head);
  if (y.tail == x.tail || y.tail == x.head || y.head == x.tail || y.head == x.head) return false;
  bool in1 = lo < y.tail && y.tail < hi;
  bool in2 = lo < y.head && y.head < hi;
  return in1 != in2;
}

inline RSpecialReport check_r_special_report(const SrapInstance& inst, const std::vector<Arc>& f) {
  RSpecialReport r;
  r.terminals_only = std::all_of(f.begin(), f.end(), [&](Arc a) { return inst.is_terminal(a.tail) && inst.is_terminal(a.head); });
  int n = inst.ring_size();
  std::vector<int> indeg(n, 0);
  for (Arc a : f)
    if (a.tail >= 0 && a.tail < n && a.head >= 0 && a.head < n) ++indeg[a.head];
  bool degrees = indeg[0] == 0 && f.size() + 1 == inst.terminals().size();
  for (int t : inst.terminals())
    if (t != 0 && indeg[t] != 1) degrees = false;
  if (degrees && r.terminals_only) {
    std::set<int> reached{0};
    for (bool grew = true; grew;) {
      grew = false;
      for (Arc a : f)
        if (reached.count(a.tail) && reached.insert(a.head).second) grew = true;
    }
    r.arborescence = reached.size() == inst.terminals().size();
  }
  r.planar = true;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (chords_cross(f[i], f[j])) r.planar = false;
  r.one_per_direction = true;
  std::set<std::pair<int, bool>> seen;
  for (Arc a : f)
    if (!seen.insert({a.tail, a.head > a.tail}).second) r.one_per_direction = false;
  return r;
}

inline bool check_r_special(const SrapInstance& inst, const std::vector<Arc>& f) {
  return check_r_special_report(inst, f).ok();
}

struct TwoApproxResult {
  std::vector<Arc> arcs;
  Cost cost = 0;
  Cost input_cost = 0;
};

inline TwoApproxResult two_approx_rspecial(const CompleteInstance& ci, const std::vector<int>& solution_links) {
  TwoApproxResult r;
  for (int id : solution_links) r.input_cost += ci.base().links()[id].cost;
  DirectedCycle cycle = build_terminal_cycle(ci, solution_links);
  r.arcs = make_nonshortenable(ci, cycle.arcs());
  r.cost = arcs_cost(ci, r.arcs);
  if (!check_r_special(ci.base(), r.arcs)) throw Error("reduced directed solution is not R-special");
  if (r.cost > 2 * r.input_cost) throw Error("directed solution exceeds twice the input cost");
  return r;
}

}  // namespace srap
