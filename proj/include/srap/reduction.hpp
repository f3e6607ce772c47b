#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "core.hpp"
#include "maxflow.hpp"
#include "problems.hpp"
#include "union_find.hpp"

namespace srap {

// SCAP instance after contraction: vertices 0..core_size-1 form one bridgeless component holding
// every terminal, the rest are isolated Steiner vertices.
struct NormalizedScap {
  ScapInstance inst;
  int core_size = 0;
  std::vector<int> vertex_map;   // original vertex -> normalized vertex
  std::vector<int> link_origin;  // normalized link -> original link
};

namespace detail {

inline std::vector<int> component_labels(int count, const std::vector<std::pair<int, int>>& edges,
                                         int skip_edge = -1) {
  UnionFind uf(count);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    if (e != skip_edge) uf.unite(edges[e].first, edges[e].second);
  std::vector<int> label(count);
  for (int v = 0; v < count; ++v) label[v] = uf.find(v);
  return label;
}

// Relabels vertices by `rep` (vertex -> class), numbering classes by smallest member.
inline std::vector<int> compact(const std::vector<int>& rep) {
  std::map<int, int> id;
  std::vector<int> first(rep.size(), -1);
  for (std::size_t v = 0; v < rep.size(); ++v)
    if (!id.count(rep[v])) id.emplace(rep[v], static_cast<int>(id.size()));
  std::vector<int> out(rep.size());
  for (std::size_t v = 0; v < rep.size(); ++v) out[v] = id[rep[v]];
  return out;
}

// Maps links through `vmap`, dropping loops and keeping the cheapest link per vertex pair.
inline void map_links(const std::vector<Link>& links, const std::vector<int>& vmap, const std::vector<int>& origin_in,
                      std::vector<Link>& out, std::vector<int>& origin_out) {
  std::map<std::pair<int, int>, int> best;
  for (int i = 0; i < static_cast<int>(links.size()); ++i) {
    int a = vmap[links[i].u], b = vmap[links[i].v];
    if (a == b) continue;
    auto key = std::minmax(a, b);
    auto it = best.find(key);
    if (it == best.end() || links[i].cost < links[it->second].cost) best[key] = i;
  }
  std::vector<int> kept;
  for (auto& [key, i] : best) kept.push_back(i);
  std::sort(kept.begin(), kept.end());
  for (int i : kept) {
    out.push_back({vmap[links[i].u], vmap[links[i].v], links[i].cost});
    origin_out.push_back(origin_in.empty() ? i : origin_in[i]);
  }
}

}  // namespace detail

inline NormalizedScap normalize_scap(const ScapInstance& s) {
  validate(s);
  Multigraph h{s.vertex_count, s.edges};
  if (!verify_edge_connectivity(h, s.terminals, 2)) throw InfeasibleError("terminals are not 2-edge-connected in H");
  std::vector<bool> is_terminal(s.vertex_count, false);
  for (int t : s.terminals) is_terminal[t] = true;

  // rep[v]: current contraction class of v, tracked as a vertex id.
  std::vector<int> rep(s.vertex_count);
  std::iota(rep.begin(), rep.end(), 0);
  std::vector<int> label = detail::component_labels(s.vertex_count, s.edges);
  int core = label[s.terminals[0]];
  for (int v = 0; v < s.vertex_count; ++v)
    if (label[v] != core) rep[v] = s.vertex_count + label[v];  // one class per Steiner component

  auto current_edges = [&]() {
    std::vector<std::pair<int, int>> e;
    for (auto [a, b] : s.edges)
      if (rep[a] != rep[b] && rep[a] < s.vertex_count) e.emplace_back(rep[a], rep[b]);
    return e;
  };
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::pair<int, int>> e = current_edges();
    for (int k = 0; k < static_cast<int>(e.size()) && !changed; ++k) {
      std::vector<int> side = detail::component_labels(s.vertex_count, e, k);
      if (side[e[k].first] == side[e[k].second]) continue;
      int t_side = side[s.terminals[0]];
      int attach = side[e[k].first] == t_side ? e[k].first : e[k].second;
      int away = attach == e[k].first ? e[k].second : e[k].first;
      for (int v = 0; v < s.vertex_count; ++v)
        if (rep[v] < s.vertex_count && side[rep[v]] == side[away]) rep[v] = attach;
      changed = true;
    }
  }

  NormalizedScap out;
  std::vector<int> order(s.vertex_count);
  std::iota(order.begin(), order.end(), 0);
  // Core classes first, then Steiner components, each by smallest member.
  std::map<std::pair<bool, int>, std::vector<int>> classes;
  for (int v = 0; v < s.vertex_count; ++v) classes[{rep[v] >= s.vertex_count, rep[v]}].push_back(v);
  std::vector<std::vector<int>> ordered;
  for (auto& [key, members] : classes) ordered.push_back(members);
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
    bool oa = rep[a[0]] >= s.vertex_count, ob = rep[b[0]] >= s.vertex_count;
    if (oa != ob) return !oa;
    return a[0] < b[0];
  });
  out.vertex_map.assign(s.vertex_count, -1);
  for (int c = 0; c < static_cast<int>(ordered.size()); ++c) {
    for (int v : ordered[c]) out.vertex_map[v] = c;
    if (rep[ordered[c][0]] < s.vertex_count) out.core_size = c + 1;
  }
  out.inst.k = s.k;
  out.inst.vertex_count = static_cast<int>(ordered.size());
  for (auto [a, b] : s.edges) {
    int x = out.vertex_map[a], y = out.vertex_map[b];
    if (x != y) out.inst.edges.emplace_back(x, y);
  }
  std::set<int> terms;
  for (int t : s.terminals) terms.insert(out.vertex_map[t]);
  out.inst.terminals.assign(terms.begin(), terms.end());
  detail::map_links(s.links, out.vertex_map, {}, out.inst.links, out.link_origin);
  return out;
}

// Every edge lies on exactly one cycle; 2-cycles model doubled tree edges.
struct Cactus {
  int node_count = 0;
  std::vector<std::vector<int>> cycles;  // node sequences
  std::vector<int> node_of;              // graph vertex -> cactus node
};

namespace detail {

using CutMask = std::uint32_t;

inline int cut_value(const Multigraph& g, CutMask x) {
  int d = 0;
  for (auto [a, b] : g.edges) d += ((x >> a) & 1) != ((x >> b) & 1);
  return d;
}

inline bool crossing(CutMask x, CutMask y) { return (x & y) && (x & ~y) && (y & ~x); }

// Cuts of the cactus as sets of graph vertices avoiding vertex 0.
inline std::set<CutMask> cactus_cuts(const Cactus& c, int vertex_count) {
  std::vector<std::vector<std::pair<int, int>>> adj(c.node_count);  // (neighbour, edge id)
  int edge_id = 0;
  std::vector<std::vector<int>> cycle_edges(c.cycles.size());
  for (std::size_t k = 0; k < c.cycles.size(); ++k) {
    const auto& cy = c.cycles[k];
    for (std::size_t i = 0; i < cy.size(); ++i) {
      int a = cy[i], b = cy[(i + 1) % cy.size()];
      adj[a].push_back({b, edge_id});
      adj[b].push_back({a, edge_id});
      cycle_edges[k].push_back(edge_id++);
    }
  }
  std::set<CutMask> out;
  for (const auto& ids : cycle_edges)
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        std::vector<bool> seen(c.node_count, false);
        std::vector<int> stack{c.node_of[0]};
        seen[c.node_of[0]] = true;
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (auto [y, e] : adj[x])
            if (e != ids[i] && e != ids[j] && !seen[y]) {
              seen[y] = true;
              stack.push_back(y);
            }
        }
        CutMask side = 0;
        for (int v = 0; v < vertex_count; ++v)
          if (!seen[c.node_of[v]]) side |= CutMask{1} << v;
        out.insert(side);
      }
  return out;
}

}  // namespace detail

inline int global_min_cut(const Multigraph& g) {
  int best = 1 << 30;
  for (int t = 1; t < g.vertex_count; ++t) best = std::min(best, local_edge_connectivity(g, 0, t));
  return best;
}

// Cactus of all minimum cuts of a connected graph with global edge connectivity `lambda`.
inline Cactus cactus_of_mincuts(const Multigraph& g, int lambda) {
  using detail::CutMask;
  int nv = g.vertex_count;
  if (nv < 2) throw Error("cactus needs at least two vertices");
  if (nv > 20) throw Error("cactus construction limited to 20 vertices");
  for (auto [a, b] : g.edges)
    if (a == b) throw Error("graph has a loop");
  int actual = global_min_cut(g);
  if (actual != lambda) throw InfeasibleError("minimum cut is " + std::to_string(actual) + ", expected " + std::to_string(lambda));

  // Vertices joined by more than lambda paths are never separated by a minimum cut.
  UnionFind uf(nv);
  for (int u = 0; u < nv; ++u)
    for (int v = u + 1; v < nv; ++v)
      if (!uf.same(u, v) && local_edge_connectivity(g, u, v, lambda + 1) > lambda) uf.unite(u, v);
  std::vector<int> root_of(nv);
  for (int v = 0; v < nv; ++v) root_of[v] = uf.find(v);
  std::vector<int> cls = detail::compact(root_of);
  int q = *std::max_element(cls.begin(), cls.end()) + 1;
  Multigraph quotient{q, {}};
  for (auto [a, b] : g.edges)
    if (cls[a] != cls[b]) quotient.edges.emplace_back(cls[a], cls[b]);
  CutMask full = q == 32 ? ~CutMask{0} : (CutMask{1} << q) - 1;

  std::vector<CutMask> cuts;
  for (CutMask x = 2; x <= full; x += 2)
    if (detail::cut_value(quotient, x) == lambda) cuts.push_back(x);
  for (int a = 0; a < q; ++a)
    for (int b = a + 1; b < q; ++b) {
      bool separated = std::any_of(cuts.begin(), cuts.end(), [&](CutMask x) { return ((x >> a) & 1) != ((x >> b) & 1); });
      if (!separated) throw Error("merge classes disagree with the cut enumeration");
    }

  UnionFind cross(static_cast<int>(cuts.size()));
  std::vector<bool> crosses(cuts.size(), false);
  for (std::size_t i = 0; i < cuts.size(); ++i)
    for (std::size_t j = i + 1; j < cuts.size(); ++j)
      if (detail::crossing(cuts[i], cuts[j])) {
        cross.unite(static_cast<int>(i), static_cast<int>(j));
        crosses[i] = crosses[j] = true;
      }
  std::vector<CutMask> laminar{full};
  for (std::size_t i = 0; i < cuts.size(); ++i)
    if (!crosses[i]) laminar.push_back(cuts[i]);
  std::sort(laminar.begin(), laminar.end(), [](CutMask a, CutMask b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) > std::popcount(b);
    return a < b;
  });
  auto laminar_parent = [&](CutMask x) {
    CutMask best = full;
    for (CutMask y : laminar)
      if (y != x && (x & y) == x && std::popcount(y) < std::popcount(best)) best = y;
    return best;
  };

  struct Circle {
    CutMask upper = 0;              // union of the parts avoiding vertex 0
    std::vector<CutMask> parts;     // cyclic order, parts[0] holds vertex 0
  };
  std::vector<Circle> circles;
  std::map<int, std::vector<CutMask>> families;
  for (std::size_t i = 0; i < cuts.size(); ++i)
    if (crosses[i]) families[cross.find(static_cast<int>(i))].push_back(cuts[i]);
  for (auto& [key, fam] : families) {
    std::map<std::vector<bool>, CutMask> atoms;
    for (int v = 0; v < q; ++v) {
      std::vector<bool> sig;
      for (CutMask x : fam) sig.push_back((x >> v) & 1);
      atoms[sig] |= CutMask{1} << v;
    }
    std::vector<CutMask> parts;
    for (auto& [sig, m] : atoms) parts.push_back(m);
    std::sort(parts.begin(), parts.end(), [](CutMask a, CutMask b) { return std::countr_zero(a) < std::countr_zero(b); });
    int p = static_cast<int>(parts.size());
    if (p < 4) throw Error("crossing family with fewer than four parts");
    std::vector<std::vector<int>> nb(p);
    for (int a = 0; a < p; ++a)
      for (int b = a + 1; b < p; ++b)
        if (detail::cut_value(quotient, parts[a] | parts[b]) == lambda) {
          nb[a].push_back(b);
          nb[b].push_back(a);
        }
    for (int a = 0; a < p; ++a)
      if (nb[a].size() != 2) throw Error("crossing family is not circular");
    Circle c;
    std::vector<bool> used(p, false);
    for (int prev = -1, cur = 0; !used[cur];) {
      used[cur] = true;
      c.parts.push_back(parts[cur]);
      int next = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
      prev = cur;
      cur = next;
    }
    if (static_cast<int>(c.parts.size()) != p) throw Error("crossing family splits into several circles");
    c.upper = full & ~parts[0];
    for (int a = 1; a < p; ++a)
      if (std::find(laminar.begin(), laminar.end(), c.parts[a]) == laminar.end()) throw Error("circle part is not a laminar cut");
    if (std::find(laminar.begin(), laminar.end(), c.upper) == laminar.end()) throw Error("circle complement is not a laminar cut");
    circles.push_back(std::move(c));
  }

  std::map<CutMask, int> circle_above;  // upper set -> circle
  std::map<CutMask, int> part_of;       // part set -> circle
  for (int k = 0; k < static_cast<int>(circles.size()); ++k) {
    if (!circle_above.emplace(circles[k].upper, k).second) throw Error("two circles share an upper set");
    for (std::size_t a = 1; a < circles[k].parts.size(); ++a)
      if (!part_of.emplace(circles[k].parts[a], k).second) throw Error("a cut is a part of two circles");
  }

  Cactus c;
  std::map<CutMask, int> node;
  for (CutMask x : laminar) {  // parents precede children
    bool headless = x != full && circle_above.count(x) && !part_of.count(x);
    node[x] = headless ? node.at(laminar_parent(x)) : c.node_count++;
  }
  for (CutMask x : laminar)
    if (x != full && !part_of.count(x) && !circle_above.count(x)) c.cycles.push_back({node.at(x), node.at(laminar_parent(x))});
  for (const auto& cir : circles) {
    std::vector<int> seq{node.at(cir.upper)};
    for (std::size_t a = 1; a < cir.parts.size(); ++a) seq.push_back(node.at(cir.parts[a]));
    c.cycles.push_back(std::move(seq));
  }
  std::vector<int> qnode(q);
  for (int v = 0; v < q; ++v) {
    CutMask best = full;
    for (CutMask x : laminar)
      if ((x >> v & 1) && std::popcount(x) < std::popcount(best)) best = x;
    qnode[v] = node.at(best);
  }
  // Three-part circles have no crossing cuts and surface as an empty node with three 2-cycles;
  // the triangle on its neighbours carries the same cuts.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> occupied(c.node_count, 0);
    for (int v = 0; v < q; ++v) ++occupied[qnode[v]];
    for (int x = 0; x < c.node_count && !changed; ++x) {
      if (occupied[x]) continue;
      std::vector<int> at;
      for (int k = 0; k < static_cast<int>(c.cycles.size()); ++k)
        if (std::find(c.cycles[k].begin(), c.cycles[k].end(), x) != c.cycles[k].end()) at.push_back(k);
      if (at.size() != 3 || std::any_of(at.begin(), at.end(), [&](int k) { return c.cycles[k].size() != 2; })) continue;
      std::vector<int> tri;
      for (int k : at) tri.push_back(c.cycles[k][0] == x ? c.cycles[k][1] : c.cycles[k][0]);
      for (auto it = at.rbegin(); it != at.rend(); ++it) c.cycles.erase(c.cycles.begin() + *it);
      c.cycles.push_back(tri);
      auto renumber = [&](int y) { return y > x ? y - 1 : y; };
      for (auto& cy : c.cycles)
        for (int& y : cy) y = renumber(y);
      for (int& y : qnode) y = renumber(y);
      --c.node_count;
      changed = true;
    }
  }
  c.node_of.resize(nv);
  for (int v = 0; v < nv; ++v) c.node_of[v] = qnode[cls[v]];

  int edges = 0;
  for (const auto& cy : c.cycles) edges += static_cast<int>(cy.size());
  UnionFind conn(c.node_count);
  for (const auto& cy : c.cycles)
    for (std::size_t i = 0; i + 1 < cy.size(); ++i) conn.unite(cy[i], cy[i + 1]);
  for (int x = 0; x < c.node_count; ++x)
    if (!conn.same(x, 0)) throw Error("cactus is disconnected");
  if (edges != c.node_count - 1 + static_cast<int>(c.cycles.size())) throw Error("cactus has an edge on two cycles");

  Cactus on_quotient{c.node_count, c.cycles, qnode};
  std::set<CutMask> expected(cuts.begin(), cuts.end());
  if (detail::cactus_cuts(on_quotient, q) != expected) throw Error("cactus cuts differ from the minimum cuts");
  return c;
}

// Circular occurrence sequence from a depth-first walk over the cactus cycles.
struct Unfolding {
  std::vector<int> sequence;                   // cactus node per ring position
  std::vector<std::vector<int>> occurrences;   // cactus node -> ring positions, increasing
  std::vector<std::pair<int, int>> zero_links;  // consecutive occurrences of one node
};

inline Unfolding unfold_cactus(const Cactus& c, int start) {
  std::vector<std::vector<int>> cycles_at(c.node_count);
  for (int k = 0; k < static_cast<int>(c.cycles.size()); ++k)
    for (int x : c.cycles[k]) cycles_at[x].push_back(k);
  Unfolding u;
  auto visit = [&](auto&& self, int x, int from) -> void {
    u.sequence.push_back(x);
    for (int k : cycles_at[x]) {
      if (k == from) continue;
      const auto& cy = c.cycles[k];
      std::size_t at = std::find(cy.begin(), cy.end(), x) - cy.begin();
      for (std::size_t i = 1; i < cy.size(); ++i) self(self, cy[(at + i) % cy.size()], k);
      u.sequence.push_back(x);
    }
  };
  visit(visit, start, -1);
  u.sequence.pop_back();
  if (u.sequence.size() == 2) u.sequence.push_back(start);
  u.occurrences.assign(c.node_count, {});
  for (int i = 0; i < static_cast<int>(u.sequence.size()); ++i) u.occurrences[u.sequence[i]].push_back(i);
  for (const auto& occ : u.occurrences)
    for (std::size_t i = 0; i + 1 < occ.size(); ++i) u.zero_links.emplace_back(occ[i], occ[i + 1]);
  return u;
}

enum class LiftKind { scap, sag };

struct LiftData {
  LiftKind kind = LiftKind::scap;
  int k = 2;
  std::vector<int> origin;  // reduced link -> original link, -1 for zero-cost splice links
};

struct Reduction {
  SrapInstance instance;
  LiftData lift;
  Cactus cactus;
  Unfolding unfolding;
};

namespace detail {

// Ring = unfolding; outside vertices follow. `vertex_node` maps every source vertex to a cactus
// node, or to -(outside index) - 1 when it lies off the cactus.
inline Reduction build_ring_instance(const Cactus& c, int start, const std::vector<int>& vertex_node,
                                     const std::vector<bool>& terminal_node, bool all_occurrences, int outside,
                                     const std::vector<Link>& links, const std::vector<int>& origin) {
  Reduction r;
  r.cactus = c;
  r.unfolding = unfold_cactus(c, start);
  const Unfolding& u = r.unfolding;
  int n = static_cast<int>(u.sequence.size());
  std::vector<int> terminals;
  for (int i = 0; i < n; ++i) {
    int x = u.sequence[i];
    if (!terminal_node[x]) continue;
    if (all_occurrences || u.occurrences[x][0] == i) terminals.push_back(i);
  }
  std::vector<int> vmap(vertex_node.size());
  for (std::size_t v = 0; v < vertex_node.size(); ++v)
    vmap[v] = vertex_node[v] >= 0 ? u.occurrences[vertex_node[v]][0] : n + (-vertex_node[v] - 1);
  std::vector<Link> out;
  for (auto [a, b] : u.zero_links) {
    out.push_back({a, b, 0});
    r.lift.origin.push_back(-1);
  }
  map_links(links, vmap, origin, out, r.lift.origin);
  // A zero-cost splice link makes any mapped link on the same pair redundant.
  std::set<std::pair<int, int>> seen;
  std::vector<Link> dedup;
  std::vector<int> dedup_origin;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (seen.insert(std::minmax(out[i].u, out[i].v)).second) {
      dedup.push_back(out[i]);
      dedup_origin.push_back(r.lift.origin[i]);
    }
  r.lift.origin = std::move(dedup_origin);
  r.instance = SrapInstance(n, outside, terminals, std::move(dedup));
  return r;
}

}  // namespace detail

inline Reduction reduce_scap(const ScapInstance& s) {
  if (s.k != 2) throw Error("cut structure is a cactus only for k = 2");
  NormalizedScap norm = normalize_scap(s);
  Multigraph core{norm.core_size, {}};
  for (auto [a, b] : norm.inst.edges) core.edges.emplace_back(a, b);
  Cactus c = cactus_of_mincuts(core, 2);
  std::vector<int> vertex_node(norm.inst.vertex_count);
  for (int v = 0; v < norm.inst.vertex_count; ++v)
    vertex_node[v] = v < norm.core_size ? c.node_of[v] : -(v - norm.core_size) - 1;
  std::vector<bool> terminal_node(c.node_count, false);
  for (int t : norm.inst.terminals) terminal_node[c.node_of[t]] = true;
  int start = c.node_of[norm.inst.terminals[0]];
  Reduction r = detail::build_ring_instance(c, start, vertex_node, terminal_node, false,
                                            norm.inst.vertex_count - norm.core_size, norm.inst.links, norm.link_origin);
  r.lift.kind = LiftKind::scap;
  r.lift.k = s.k;
  return r;
}

inline Reduction reduce_sag(const SagInstance& s) {
  validate(s);
  Multigraph h{s.h_vertices, s.edges};
  int lambda = global_min_cut(h);
  if (lambda < s.k) throw InfeasibleError("H is not " + std::to_string(s.k) + "-edge-connected");
  if (lambda > s.k) throw InfeasibleError("H is already " + std::to_string(s.k + 1) + "-edge-connected");
  Cactus c = cactus_of_mincuts(h, s.k);
  int total = s.h_vertices + s.extra_vertices;
  std::vector<int> vertex_node(total);
  for (int v = 0; v < total; ++v) vertex_node[v] = v < s.h_vertices ? c.node_of[v] : -(v - s.h_vertices) - 1;
  std::vector<bool> terminal_node(c.node_count, true);
  Reduction r = detail::build_ring_instance(c, c.node_of[0], vertex_node, terminal_node, true, s.extra_vertices,
                                            s.links, {});
  r.lift.kind = LiftKind::sag;
  r.lift.k = s.k;
  return r;
}

// Original link indices behind a reduced solution; splice links vanish.
inline std::vector<int> lift_links(const LiftData& lift, const std::vector<int>& reduced) {
  std::set<int> out;
  for (int id : reduced) {
    if (id < 0 || id >= static_cast<int>(lift.origin.size())) throw Error("reduced link index out of range");
    if (lift.origin[id] >= 0) out.insert(lift.origin[id]);
  }
  return {out.begin(), out.end()};
}

inline std::vector<int> lift_solution(const ScapInstance& s, const LiftData& lift, const std::vector<int>& reduced) {
  std::vector<int> out = lift_links(lift, reduced);
  if (!verify_scap_solution(s, out)) throw Error("lifted solution failed verification");
  return out;
}

inline std::vector<int> lift_solution(const SagInstance& s, const LiftData& lift, const std::vector<int>& reduced) {
  std::vector<int> out = lift_links(lift, reduced);
  if (!verify_sag_solution(s, out)) throw Error("lifted solution failed verification");
  return out;
}

}  // namespace srap
