#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srap {

using Cost = std::int64_t;
using VertexMask = std::uint64_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Link {
  int u = 0;
  int v = 0;
  Cost cost = 0;
};

// Inclusive range of ring positions on the path 0..n-1 (root edge removed).
struct Interval {
  int lo = 0;
  int hi = 0;

  bool contains(int x) const { return lo <= x && x <= hi; }
  int length() const { return hi - lo + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

using DangerousCut = Interval;

class SrapInstance {
 public:
  SrapInstance() = default;

  SrapInstance(int n, int m, std::vector<int> terminals, std::vector<Link> links)
      : n_(n), m_(m), links_(std::move(links)) {
    if (n < 3) throw Error("ring must have at least 3 vertices");
    if (m < 0) throw Error("outside count must be nonnegative");
    if (n > 64) throw Error("ring larger than 64 vertices is not supported");
    is_terminal_.assign(n, false);
    for (int t : terminals) {
      if (t < 0 || t >= n) throw Error("terminal " + std::to_string(t) + " is not a ring vertex");
      is_terminal_[t] = true;
    }
    if (!is_terminal_[0]) throw Error("root 0 must be a terminal");
    std::set<std::pair<int, int>> seen;
    for (const Link& l : links_) {
      if (l.u < 0 || l.v < 0 || l.u >= n + m || l.v >= n + m)
        throw Error("link endpoint out of range");
      if (l.u == l.v) throw Error("link endpoints must be distinct");
      if (l.cost < 0) throw Error("link cost must be nonnegative");
      if (!seen.insert(std::minmax(l.u, l.v)).second)
        throw Error("duplicate link {" + std::to_string(l.u) + "," + std::to_string(l.v) + "}");
    }
    for (int v = 0; v < n; ++v)
      if (is_terminal_[v]) terminals_.push_back(v);
  }

  int ring_size() const { return n_; }
  int outside_count() const { return m_; }
  int vertex_count() const { return n_ + m_; }
  int root() const { return 0; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<int>& terminals() const { return terminals_; }
  bool is_terminal(int v) const { return v >= 0 && v < n_ && is_terminal_[v]; }
  bool is_ring(int v) const { return v >= 0 && v < n_; }
  bool all_terminals() const { return static_cast<int>(terminals_.size()) == n_; }

  VertexMask terminal_mask() const {
    VertexMask mask = 0;
    for (int t : terminals_) mask |= VertexMask{1} << t;
    return mask;
  }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<bool> is_terminal_;
  std::vector<int> terminals_;
  std::vector<Link> links_;
};

inline SrapInstance build_instance(int n, int m, std::vector<int> terminals, std::vector<Link> links) {
  return SrapInstance(n, m, std::move(terminals), std::move(links));
}

inline VertexMask interval_mask(Interval c) {
  VertexMask upto_hi = c.hi >= 63 ? ~VertexMask{0} : (VertexMask{1} << (c.hi + 1)) - 1;
  VertexMask below_lo = (VertexMask{1} << c.lo) - 1;
  return upto_hi & ~below_lo;
}

// Intervals [i,j] of {1..n-1} holding a terminal, in lexicographic (i, j) order.
inline std::vector<DangerousCut> dangerous_cuts(const SrapInstance& inst) {
  std::vector<DangerousCut> cuts;
  int n = inst.ring_size();
  for (int i = 1; i < n; ++i) {
    bool has_terminal = false;
    for (int j = i; j < n; ++j) {
      has_terminal = has_terminal || inst.is_terminal(j);
      if (has_terminal) cuts.push_back({i, j});
    }
  }
  return cuts;
}

// All intervals of {1..n-1}, lexicographic order.
inline std::vector<Interval> all_ring_intervals(int n) {
  std::vector<Interval> out;
  for (int i = 1; i < n; ++i)
    for (int j = i; j < n; ++j) out.push_back({i, j});
  return out;
}

struct HyperLink {
  std::vector<int> vertices;  // sorted ring vertices
  Cost cost = 0;
  std::vector<int> realization;  // indices into the base instance links

  VertexMask mask() const {
    VertexMask m = 0;
    for (int v : vertices) m |= VertexMask{1} << v;
    return m;
  }
  int min_vertex() const { return vertices.front(); }
  int max_vertex() const { return vertices.back(); }
};

inline HyperLink make_hyperlink(std::vector<int> vertices, Cost cost, std::vector<int> realization = {}) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.size() < 2) throw Error("hyper-link needs two distinct ring vertices");
  return HyperLink{std::move(vertices), cost, std::move(realization)};
}

enum class ProvenanceKind { original, shadow, shortening, composition, artificial, zero_cost };

struct Arc {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

struct DirectedLink {
  int tail = 0;
  int head = 0;
  Cost cost = 0;
  ProvenanceKind kind = ProvenanceKind::shadow;
  // shadow/shortening: index of the completed undirected link; composition: the L2 arcs in order.
  int source = -1;
  std::vector<Arc> parts;

  Arc arc() const { return {tail, head}; }
};

inline bool covers(const HyperLink& h, Interval c) {
  bool in = false, out = false;
  for (int v : h.vertices) (c.contains(v) ? in : out) = true;
  return in && out;
}

inline bool covers_mask(VertexMask a, Interval c) {
  VertexMask cm = interval_mask(c);
  return (a & cm) != 0 && (a & ~cm) != 0;
}

inline bool enters(Arc d, Interval c) { return c.contains(d.head) && !c.contains(d.tail); }
inline bool enters(const DirectedLink& d, Interval c) { return enters(d.arc(), c); }

inline Interval interval_of(const std::vector<int>& a) {
  if (a.empty()) throw Error("interval_of needs a nonempty set");
  auto [lo, hi] = std::minmax_element(a.begin(), a.end());
  return {*lo, *hi};
}

inline Interval interval_of(VertexMask a) {
  if (a == 0) throw Error("interval_of needs a nonempty set");
  return {std::countr_zero(a), 63 - std::countl_zero(a)};
}

inline std::vector<int> mask_vertices(VertexMask a) {
  std::vector<int> out;
  while (a) {
    out.push_back(std::countr_zero(a));
    a &= a - 1;
  }
  return out;
}

}  // namespace srap
