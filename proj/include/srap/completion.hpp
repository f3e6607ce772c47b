#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "core.hpp"
#include "paths.hpp"

namespace srap {

struct CompletedLink {
  int u = 0;  // u < v, ring vertices
  int v = 0;
  Cost cost = 0;
  std::vector<int> path;   // vertex sequence from u to v
  std::vector<int> links;  // original link indices along the path
};

class CompleteInstance {
 public:
  CompleteInstance() = default;

  const SrapInstance& base() const { return base_; }
  int ring_size() const { return base_.ring_size(); }

  const std::vector<CompletedLink>& undirected() const { return l1_; }
  std::optional<int> undirected_index(int u, int v) const {
    int i = l1_index_[u][v];
    return i < 0 ? std::nullopt : std::optional<int>(i);
  }
  const CompletedLink* undirected_link(int u, int v) const {
    int i = l1_index_[u][v];
    return i < 0 ? nullptr : &l1_[i];
  }

  const std::optional<DirectedLink>& shadow_layer(int u, int v) const { return l2_[u][v]; }
  const std::optional<DirectedLink>& directed(int u, int v) const { return l3_[u][v]; }
  std::optional<Cost> cost(int u, int v) const {
    return l3_[u][v] ? std::optional<Cost>(l3_[u][v]->cost) : std::nullopt;
  }
  Cost cost_of(Arc a) const {
    if (!l3_[a.tail][a.head]) throw Error("arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ") is absent");
    return l3_[a.tail][a.head]->cost;
  }

  std::vector<DirectedLink> directed_links() const {
    std::vector<DirectedLink> out;
    for (const auto& row : l3_)
      for (const auto& d : row)
        if (d) out.push_back(*d);
    return out;
  }

  friend std::vector<CompletedLink> metric_complete_undirected(const SrapInstance&);
  friend CompleteInstance complete(const SrapInstance&);

 private:
  SrapInstance base_;
  std::vector<CompletedLink> l1_;
  std::vector<std::vector<int>> l1_index_;
  std::vector<std::vector<std::optional<DirectedLink>>> l2_;
  std::vector<std::vector<std::optional<DirectedLink>>> l3_;
};

inline std::vector<CompletedLink> metric_complete_undirected(const SrapInstance& inst) {
  int total = inst.vertex_count();
  std::vector<std::vector<std::optional<Cost>>> w(total, std::vector<std::optional<Cost>>(total));
  std::map<std::pair<int, int>, int> link_at;
  for (int i = 0; i < static_cast<int>(inst.links().size()); ++i) {
    const Link& l = inst.links()[i];
    w[l.u][l.v] = w[l.v][l.u] = l.cost;
    link_at[std::minmax(l.u, l.v)] = i;
  }
  detail::LexShortestPaths sp(std::move(w));
  std::vector<CompletedLink> out;
  int n = inst.ring_size();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (!sp.dist(u, v)) continue;
      CompletedLink c{u, v, sp.dist(u, v)->cost, sp.path(u, v), {}};
      for (std::size_t k = 0; k + 1 < c.path.size(); ++k)
        c.links.push_back(link_at.at(std::minmax(c.path[k], c.path[k + 1])));
      out.push_back(std::move(c));
    }
  return out;
}

// Shadows and head-fixed shortenings of every completed link; the cheapest candidate
// per ordered pair wins, ties going to the lower completed-link index, then to the shadow.
inline std::vector<std::vector<std::optional<DirectedLink>>> shadow_complete(int n, const std::vector<CompletedLink>& l1) {
  std::vector<std::vector<std::optional<DirectedLink>>> l2(n, std::vector<std::optional<DirectedLink>>(n));
  auto offer = [&](int tail, int head, Cost cost, ProvenanceKind kind, int source) {
    auto& slot = l2[tail][head];
    if (slot && slot->cost <= cost) return;
    slot = DirectedLink{tail, head, cost, kind, source, {}};
  };
  for (int i = 0; i < static_cast<int>(l1.size()); ++i) {
    const CompletedLink& c = l1[i];
    offer(c.u, c.v, c.cost, ProvenanceKind::shadow, i);
    offer(c.v, c.u, c.cost, ProvenanceKind::shadow, i);
    for (int s = c.u + 1; s < c.v; ++s) {
      offer(s, c.v, c.cost, ProvenanceKind::shortening, i);
      offer(s, c.u, c.cost, ProvenanceKind::shortening, i);
    }
  }
  return l2;
}

inline std::vector<std::vector<std::optional<DirectedLink>>> metric_complete_directed(
    const std::vector<std::vector<std::optional<DirectedLink>>>& l2) {
  int n = static_cast<int>(l2.size());
  std::vector<std::vector<std::optional<Cost>>> w(n, std::vector<std::optional<Cost>>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && l2[u][v]) w[u][v] = l2[u][v]->cost;
  detail::LexShortestPaths sp(w);
  std::vector<std::vector<std::optional<DirectedLink>>> l3(n, std::vector<std::optional<DirectedLink>>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v || !sp.dist(u, v)) continue;
      std::vector<int> seq = sp.path(u, v);
      if (seq.size() == 2) {
        l3[u][v] = l2[u][v];
        continue;
      }
      DirectedLink d{u, v, sp.dist(u, v)->cost, ProvenanceKind::composition, -1, {}};
      for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        const DirectedLink& part = *l2[seq[k]][seq[k + 1]];
        if (part.kind == ProvenanceKind::composition) {
          d.parts.insert(d.parts.end(), part.parts.begin(), part.parts.end());
        } else {
          d.parts.push_back(part.arc());
        }
      }
      l3[u][v] = std::move(d);
    }
  return l3;
}

inline CompleteInstance complete(const SrapInstance& inst) {
  CompleteInstance ci;
  int n = inst.ring_size();
  ci.base_ = inst;
  ci.l1_ = metric_complete_undirected(inst);
  ci.l1_index_.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < static_cast<int>(ci.l1_.size()); ++i) {
    ci.l1_index_[ci.l1_[i].u][ci.l1_[i].v] = i;
    ci.l1_index_[ci.l1_[i].v][ci.l1_[i].u] = i;
  }
  ci.l2_ = shadow_complete(n, ci.l1_);
  ci.l3_ = metric_complete_directed(ci.l2_);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (!ci.l3_[u][v]) continue;
      int lo = std::min(u, v), hi = std::max(u, v);
      for (int s = lo + 1; s < hi; ++s)
        if (!ci.l3_[s][v] || ci.l3_[s][v]->cost > ci.l3_[u][v]->cost)
          throw Error("completion lost a shortening");
    }
  return ci;
}

// Instance whose links are the completed undirected links; completing it again is a fixpoint.
inline SrapInstance completed_instance(const CompleteInstance& ci) {
  std::vector<Link> links;
  for (const CompletedLink& c : ci.undirected()) links.push_back({c.u, c.v, c.cost});
  return SrapInstance(ci.ring_size(), ci.base().outside_count(), ci.base().terminals(), links);
}

// Completed undirected links whose coverage certifies a directed link.
inline std::vector<int> kappa(const CompleteInstance& ci, const DirectedLink& f) {
  std::vector<int> out;
  auto add = [&](int idx) {
    if (std::find(out.begin(), out.end(), idx) == out.end()) out.push_back(idx);
  };
  switch (f.kind) {
    case ProvenanceKind::shadow:
    case ProvenanceKind::shortening:
      add(f.source);
      break;
    case ProvenanceKind::composition:
      for (Arc a : f.parts) add(ci.shadow_layer(a.tail, a.head)->source);
      break;
    default:
      throw Error("kappa is undefined for artificial or zero-cost links");
  }
  return out;
}

inline std::vector<int> kappa(const CompleteInstance& ci, Arc a) {
  const auto& d = ci.directed(a.tail, a.head);
  if (!d) throw Error("kappa of an absent directed link");
  return kappa(ci, *d);
}

inline Cost kappa_cost(const CompleteInstance& ci, Arc a) {
  Cost total = 0;
  for (int i : kappa(ci, a)) total += ci.undirected()[i].cost;
  return total;
}

inline HyperLink hyperlink_of(const CompletedLink& c) { return make_hyperlink({c.u, c.v}, c.cost, c.links); }

}  // namespace srap
