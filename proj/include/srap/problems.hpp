#pragma once

#include <set>
#include <utility>
#include <vector>

#include "core.hpp"
#include "maxflow.hpp"

namespace srap {

// Raised when an instance admits no feasible augmentation or violates a connectivity precondition.
struct InfeasibleError : Error {
  using Error::Error;
};

// k-SCAP input: graph H, terminals, links; a solution makes H + S Steiner (k+1)-edge-connected on R.
struct ScapInstance {
  int vertex_count = 0;
  std::vector<int> terminals;
  std::vector<std::pair<int, int>> edges;
  std::vector<Link> links;
  int k = 2;
};

// k-SAG input: H on vertices 0..h-1 (all terminals), extra Steiner vertices h..h+extra-1.
struct SagInstance {
  int k = 2;
  int h_vertices = 0;
  int extra_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<Link> links;
};

inline void validate_links(int vertex_count, const std::vector<Link>& links) {
  std::set<std::pair<int, int>> seen;
  for (const Link& l : links) {
    if (l.u < 0 || l.v < 0 || l.u >= vertex_count || l.v >= vertex_count) throw Error("link endpoint out of range");
    if (l.u == l.v) throw Error("link endpoints must be distinct");
    if (l.cost < 0) throw Error("link cost must be nonnegative");
    if (!seen.insert(std::minmax(l.u, l.v)).second) throw Error("duplicate link");
  }
}

inline void validate(const ScapInstance& s) {
  if (s.vertex_count < 2) throw Error("graph needs at least two vertices");
  if (s.terminals.size() < 2) throw Error("need at least two terminals");
  for (int t : s.terminals)
    if (t < 0 || t >= s.vertex_count) throw Error("terminal out of range");
  for (auto [a, b] : s.edges)
    if (a < 0 || b < 0 || a >= s.vertex_count || b >= s.vertex_count || a == b) throw Error("bad edge");
  validate_links(s.vertex_count, s.links);
}

inline void validate(const SagInstance& s) {
  if (s.k < 1) throw Error("k must be positive");
  if (s.h_vertices < 2) throw Error("graph needs at least two vertices");
  if (s.extra_vertices < 0) throw Error("extra vertex count must be nonnegative");
  for (auto [a, b] : s.edges)
    if (a < 0 || b < 0 || a >= s.h_vertices || b >= s.h_vertices || a == b) throw Error("bad edge");
  validate_links(s.h_vertices + s.extra_vertices, s.links);
}

inline Multigraph graph_with_links(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                                   const std::vector<Link>& links, const std::vector<int>& chosen) {
  Multigraph g{vertex_count, edges};
  for (int id : chosen) g.edges.emplace_back(links[id].u, links[id].v);
  return g;
}

inline std::vector<int> sag_terminals(const SagInstance& s) {
  std::vector<int> r(s.h_vertices);
  for (int i = 0; i < s.h_vertices; ++i) r[i] = i;
  return r;
}

inline bool verify_scap_solution(const ScapInstance& s, const std::vector<int>& chosen) {
  return verify_edge_connectivity(graph_with_links(s.vertex_count, s.edges, s.links, chosen), s.terminals, s.k + 1);
}

inline bool verify_sag_solution(const SagInstance& s, const std::vector<int>& chosen) {
  return verify_edge_connectivity(graph_with_links(s.h_vertices + s.extra_vertices, s.edges, s.links, chosen),
                                  sag_terminals(s), s.k + 1);
}

inline Cost links_cost(const std::vector<Link>& links, const std::vector<int>& chosen) {
  Cost total = 0;
  for (int id : chosen) total += links[id].cost;
  return total;
}

}  // namespace srap
