#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "feasibility.hpp"
#include "problems.hpp"
#include "reduction.hpp"

namespace srap {

// Deterministic across platforms: standard engines are specified, distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error("empty range");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
      std::uint64_t x = eng_();
      if (x < limit) return x % bound;
    }
  }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

inline std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct SrapGenOptions {
  int n = 8;
  int m = 2;
  int links = 12;
  Cost max_cost = 10;
  bool all_terminals = false;
};

namespace detail {

class LinkSet {
 public:
  bool add(int u, int v, Cost cost) {
    if (u == v || !pairs_.insert(std::minmax(u, v)).second) return false;
    links_.push_back({u, v, cost});
    return true;
  }
  bool has(int u, int v) const { return pairs_.count(std::minmax(u, v)) > 0; }
  std::vector<Link>& links() { return links_; }

 private:
  std::set<std::pair<int, int>> pairs_;
  std::vector<Link> links_;
};

// Random extra links, then a shuffle so the hidden feasible set is not a prefix.
inline std::vector<Link> pad_and_shuffle(Rng& rng, LinkSet& ls, int vertex_count, int target, Cost max_cost) {
  long long possible = static_cast<long long>(vertex_count) * (vertex_count - 1) / 2;
  for (int tries = 0; static_cast<int>(ls.links().size()) < target && static_cast<long long>(ls.links().size()) < possible &&
                      tries < 100 * target;
       ++tries)
    ls.add(rng.range(0, vertex_count - 1), rng.range(0, vertex_count - 1), rng.range(1, static_cast<int>(max_cost)));
  std::vector<Link> out = ls.links();
  rng.shuffle(out);
  for (Link& l : out)
    if (rng.chance(1, 2)) std::swap(l.u, l.v);
  return out;
}

}  // namespace detail

// Always feasible: uncovered dangerous cuts are repaired by a link or an outside two-link path.
inline SrapInstance generate_srap(std::uint64_t seed, const SrapGenOptions& o) {
  if (o.n < 3 || o.n > 64 || o.m < 0 || o.max_cost < 1) throw Error("bad generator parameters");
  Rng rng(seed);
  std::vector<int> terminals{0};
  for (int v = 1; v < o.n; ++v)
    if (o.all_terminals || rng.chance(1, 2)) terminals.push_back(v);
  SrapInstance shape(o.n, o.m, terminals, {});
  detail::LinkSet ls;
  auto cost = [&] { return static_cast<Cost>(rng.range(1, static_cast<int>(o.max_cost))); };
  for (;;) {
    std::vector<int> ids(ls.links().size());
    std::iota(ids.begin(), ids.end(), 0);
    SrapInstance partial(o.n, o.m, terminals, ls.links());
    std::vector<VertexMask> sets = joined_sets(partial, ids);
    std::optional<Interval> open;
    for (Interval c : dangerous_cuts(shape))
      if (!std::any_of(sets.begin(), sets.end(), [&](VertexMask a) { return covers_mask(a, c); })) {
        open = c;
        break;
      }
    if (!open) break;
    std::vector<int> inside, outside;
    for (int v = 0; v < o.n; ++v) (open->contains(v) ? inside : outside).push_back(v);
    int u = inside[rng.below(inside.size())];
    int v = outside[rng.below(outside.size())];
    if (o.m > 0 && rng.chance(1, 2)) {
      int x = o.n + rng.range(0, o.m - 1);
      if (!ls.has(u, x) && !ls.has(x, v)) {
        ls.add(u, x, cost());
        ls.add(x, v, cost());
        continue;
      }
    }
    if (!ls.add(u, v, cost())) ls.add(inside.front(), outside.front(), cost());
  }
  std::vector<Link> links = detail::pad_and_shuffle(rng, ls, o.n + o.m, o.links, o.max_cost);
  return SrapInstance(o.n, o.m, terminals, std::move(links));
}

struct ScapGenOptions {
  int core = 6;         // vertices of the terminal-carrying part
  int pendant = 1;      // Steiner vertices hanging off by bridges
  int steiner_components = 1;
  int links = 10;
  Cost max_cost = 10;
};

namespace detail {

// Ear decomposition over `count` vertices starting at `first`: bridgeless, usually with minimum cut 2.
inline void ear_graph(Rng& rng, int first, int count, std::vector<std::pair<int, int>>& edges) {
  int cycle = std::min(count, rng.range(3, std::max(3, count)));
  for (int i = 0; i < cycle; ++i) edges.emplace_back(first + i, first + (i + 1) % cycle);
  int used = cycle;
  while (used < count) {
    int len = std::min(count - used, rng.range(1, 3));
    int a = first + rng.range(0, used - 1), b = first + rng.range(0, used - 1);
    int prev = a;
    for (int i = 0; i < len; ++i) {
      edges.emplace_back(prev, first + used + i);
      prev = first + used + i;
    }
    edges.emplace_back(prev, b);
    used += len;
  }
}

// Adds links until every terminal has k edge-disjoint paths to the first; each added link raises
// one deficient local connectivity.
inline void repair_connectivity(Rng& rng, const Multigraph& h, const std::vector<int>& terminals, int k, int vertex_count,
                                LinkSet& ls, Cost max_cost) {
  Multigraph g = h;
  g.vertex_count = vertex_count;
  for (const Link& l : ls.links()) g.edges.emplace_back(l.u, l.v);
  auto gain = [&](int s, int t, int a, int b, int before) {
    if (a == b || ls.has(a, b)) return false;
    g.edges.emplace_back(a, b);
    bool better = local_edge_connectivity(g, s, t, k) > before;
    g.edges.pop_back();
    return better;
  };
  for (std::size_t i = 1; i < terminals.size(); ++i)
    for (int before; (before = local_edge_connectivity(g, terminals[0], terminals[i], k)) < k;) {
      int s = terminals[0], t = terminals[i];
      std::pair<int, int> pick{-1, -1};
      int x = rng.range(0, vertex_count - 1);
      if (gain(s, t, t, x, before)) pick = {t, x};
      for (int a = 0; a < vertex_count && pick.first < 0; ++a)
        for (int b = a + 1; b < vertex_count && pick.first < 0; ++b)
          if (gain(s, t, a, b, before)) pick = {a, b};
      if (pick.first < 0) throw Error("cannot repair connectivity");
      ls.add(pick.first, pick.second, rng.range(1, static_cast<int>(max_cost)));
      g.edges.push_back(pick);
    }
}

}  // namespace detail

// Steiner 2-edge-connected on the terminals; made feasible by repair links.
inline ScapInstance generate_scap(std::uint64_t seed, const ScapGenOptions& o) {
  if (o.core < 3 || o.pendant < 0 || o.steiner_components < 0) throw Error("bad generator parameters");
  Rng rng(seed);
  for (;;) {
    ScapInstance s;
    std::vector<std::pair<int, int>> edges;
    detail::ear_graph(rng, 0, o.core, edges);
    int next = o.core;
    for (int p = 0; p < o.pendant; ++p, ++next) edges.emplace_back(rng.range(0, next - 1), next);
    for (int c = 0; c < o.steiner_components; ++c) {
      int size = rng.range(1, 3);
      if (size >= 3) detail::ear_graph(rng, next, size, edges);
      else if (size == 2) edges.emplace_back(next, next + 1);
      next += size;
    }
    s.vertex_count = next;
    s.edges = edges;
    for (int v = 0; v < o.core; ++v)
      if (v == 0 || rng.chance(2, 3)) s.terminals.push_back(v);
    if (s.terminals.size() < 2) s.terminals.push_back(1);
    Multigraph core{o.core, {}};
    for (auto [a, b] : edges)
      if (a < o.core && b < o.core) core.edges.emplace_back(a, b);
    if (global_min_cut(core) != 2) continue;
    detail::LinkSet ls;
    detail::repair_connectivity(rng, Multigraph{s.vertex_count, s.edges}, s.terminals, 3, s.vertex_count, ls, o.max_cost);
    s.links = detail::pad_and_shuffle(rng, ls, s.vertex_count, o.links, o.max_cost);
    return s;
  }
}

struct SagGenOptions {
  int k = 2;
  int h = 6;
  int extra = 1;
  int links = 10;
  Cost max_cost = 10;
};

// H has global edge connectivity exactly k; made feasible by repair links.
inline SagInstance generate_sag(std::uint64_t seed, const SagGenOptions& o) {
  if (o.k < 1 || o.h < 2 || o.extra < 0) throw Error("bad generator parameters");
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw Error("could not generate a graph with the requested connectivity");
    SagInstance s;
    s.k = o.k;
    s.h_vertices = o.h;
    s.extra_vertices = o.extra;
    if (o.k == 2) {
      detail::ear_graph(rng, 0, o.h, s.edges);
    } else {
      for (int i = 0; i < o.h; ++i) s.edges.emplace_back(i, (i + 1) % o.h);
      Multigraph g{o.h, s.edges};
      while (global_min_cut(g) < o.k) {
        int a = rng.range(0, o.h - 1), b = rng.range(0, o.h - 1);
        if (a == b) continue;
        s.edges.emplace_back(a, b);
        g.edges.emplace_back(a, b);
      }
    }
    if (global_min_cut(Multigraph{o.h, s.edges}) != o.k) continue;
    detail::LinkSet ls;
    detail::repair_connectivity(rng, Multigraph{o.h + o.extra, s.edges}, sag_terminals(s), o.k + 1, o.h + o.extra, ls,
                                o.max_cost);
    s.links = detail::pad_and_shuffle(rng, ls, o.h + o.extra, o.links, o.max_cost);
    return s;
  }
}

}  // namespace srap
