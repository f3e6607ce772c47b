#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dropcalc.hpp"

namespace srap {

struct SlackOptions {
  bool prune = true;  // bound-based pruning; the optimum value and argmax stay exact
  std::size_t state_limit = 4'000'000;
};

struct SlackResult {
  std::vector<int> chosen;  // indices into the hyper-link list, sorted
  Cost value = 0;
};

// Table key and value for one interval. Parts are labelled by first occurrence in sorted B.
struct TableEntry {
  std::vector<int> b;
  std::vector<int> label;
  std::vector<int> phi;
  std::vector<char> psi;
  Cost value = 0;
  int split = -1;  // -1: base case
  int left = -1;
  int right = -1;
};

class SlackTable {
 public:
  SlackTable(const DropContext& ctx, const std::vector<VertexMask>& sets, const std::vector<Cost>& costs,
             const std::vector<Cost>& gain, int alpha, SlackOptions opt = {})
      : ctx_(ctx), sets_(sets), cost_(costs), gain_(gain), alpha_(alpha), opt_(opt) {
    n_ = ctx.ring_size();
    if (alpha < 0) throw Error("alpha must be nonnegative");
    if (gain.size() != static_cast<std::size_t>(n_)) throw Error("gain must be indexed by ring vertex");
    Cost total_gain = 0;
    for (Cost g : gain_) total_gain += g;
    for (int h = 0; h < static_cast<int>(sets_.size()); ++h)
      if (!opt_.prune || cost_[h] <= total_gain) usable_.push_back(h);
    inter_.assign(sets_.size(), std::vector<char>(sets_.size(), 0));
    for (int a : usable_)
      for (int b : usable_) inter_[a][b] = a != b && intersecting_masks(sets_[a], sets_[b]);
    if (opt_.prune) seed_incumbent();
    fill();
  }

  const std::vector<TableEntry>& entries(Interval c) const { return table_[c.lo][c.hi]; }
  std::optional<int> find(Interval c, const TableEntry& key) const {
    auto it = index_[c.lo][c.hi].find(encode(key));
    if (it == index_[c.lo][c.hi].end()) return std::nullopt;
    return it->second;
  }

  SlackResult best() const {
    SlackResult r;
    const auto& top = table_[1][n_ - 1];
    int arg = -1;
    for (int i = 0; i < static_cast<int>(top.size()); ++i)
      if (top[i].value > r.value) {
        r.value = top[i].value;
        arg = i;
      }
    if (arg >= 0) {
      collect({1, n_ - 1}, arg, r.chosen);
      std::sort(r.chosen.begin(), r.chosen.end());
      r.chosen.erase(std::unique(r.chosen.begin(), r.chosen.end()), r.chosen.end());
    }
    return r;
  }

  std::vector<int> witness(Interval c, int entry) const {
    std::vector<int> out;
    collect(c, entry, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::size_t state_count() const { return states_; }

 private:
  static std::string encode(const TableEntry& e) {
    std::string key;
    auto put = [&](int x) {
      key.push_back(static_cast<char>(x & 0xff));
      key.push_back(static_cast<char>(x >> 8 & 0xff));
    };
    put(static_cast<int>(e.b.size()));
    for (int x : e.b) put(x);
    for (int x : e.label) put(x);
    for (int x : e.phi) put(x);
    for (char x : e.psi) put(x);
    return key;
  }

  VertexMask mask_of(Interval c) const { return interval_mask(c); }

  Cost outside_gain(Interval c) const {
    Cost total = 0;
    for (int v = 1; v < n_; ++v)
      if (!c.contains(v)) total += gain_[v];
    return total;
  }

  Cost pending_gain(const TableEntry& e, Interval c) const {
    Cost total = 0;
    for (std::size_t p = 0; p < e.phi.size(); ++p)
      if (e.psi[p] && c.contains(e.phi[p])) total += gain_[e.phi[p]];
    return total;
  }

  void offer(Interval c, TableEntry&& e) {
    if (opt_.prune) {
      if (e.value > incumbent_) incumbent_ = e.value;
      if (e.value + pending_gain(e, c) + outside_[c.lo][c.hi] < incumbent_) return;
    }
    auto& idx = index_[c.lo][c.hi];
    auto& vec = table_[c.lo][c.hi];
    std::string key = encode(e);
    auto it = idx.find(key);
    if (it == idx.end()) {
      idx.emplace(std::move(key), static_cast<int>(vec.size()));
      vec.push_back(std::move(e));
      if (++states_ > opt_.state_limit) throw Error("slack table exceeded its state limit");
    } else if (e.value > vec[it->second].value) {
      vec[it->second] = std::move(e);
    }
  }

  // Lower bound from single hyper-links; each is alpha-thin when alpha >= 1.
  void seed_incumbent() {
    if (alpha_ < 1) return;
    for (int h : usable_) {
      VertexMask a = sets_[h];
      int top = ctx_.lca(a);
      Cost value = -cost_[h];
      for (int v : mask_vertices(a))
        if (v != top && v != 0) value += gain_[v];
      incumbent_ = std::max(incumbent_, value);
    }
  }

  void base(int v) {
    std::vector<int> here;
    for (int h : usable_)
      if (sets_[h] >> v & 1) here.push_back(h);
    std::vector<int> pick;
    auto rec = [&](auto&& self, std::size_t next) -> void {
      TableEntry e;
      e.b = pick;
      if (!pick.empty()) {
        VertexMask all = 0;
        Cost cost = 0;
        for (int h : pick) {
          all |= sets_[h];
          cost += cost_[h];
        }
        int top = ctx_.lca(all);
        e.label.assign(pick.size(), 0);
        e.phi = {top};
        e.psi = {static_cast<char>(all >> top & 1)};
        e.value = (top != v ? gain_[v] : 0) - cost;
      }
      offer({v, v}, std::move(e));
      if (static_cast<int>(pick.size()) == alpha_) return;
      for (std::size_t i = next; i < here.size(); ++i) {
        pick.push_back(here[i]);
        self(self, i + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }

  void merge(Interval c1, Interval c2) {
    Interval c{c1.lo, c2.hi};
    VertexMask m1 = mask_of(c1), m2 = mask_of(c2), m = mask_of(c);
    const auto& t1 = table_[c1.lo][c1.hi];
    const auto& t2 = table_[c2.lo][c2.hi];
    auto signature = [&](const TableEntry& e, VertexMask other) {
      std::string s;
      for (int h : e.b)
        if (sets_[h] & other) {
          s.push_back(static_cast<char>(h & 0xff));
          s.push_back(static_cast<char>(h >> 8 & 0xff));
        }
      return s;
    };
    std::unordered_map<std::string, std::vector<int>> by_sig;
    for (int j = 0; j < static_cast<int>(t2.size()); ++j) by_sig[signature(t2[j], m1)].push_back(j);
    int split = c1.hi;
    for (int i = 0; i < static_cast<int>(t1.size()); ++i) {
      const TableEntry& q1 = t1[i];
      auto it = by_sig.find(signature(q1, m2));
      if (it == by_sig.end()) continue;
      for (int j : it->second) combine(c, m, split, i, q1, j, t2[j], c1, c2);
    }
  }

  void combine(Interval c, VertexMask m, int split, int i, const TableEntry& q1, int j, const TableEntry& q2,
               Interval c1, Interval c2) {
    std::vector<int> all;
    std::set_union(q1.b.begin(), q1.b.end(), q2.b.begin(), q2.b.end(), std::back_inserter(all));
    std::vector<int> crossing;
    for (int h : all)
      if (sets_[h] & ~m) crossing.push_back(h);
    if (static_cast<int>(crossing.size()) > alpha_) return;

    int p1 = static_cast<int>(q1.phi.size()), p2 = static_cast<int>(q2.phi.size());
    UnionFind uf(p1 + p2);
    Cost shared = 0;
    for (std::size_t a = 0; a < q1.b.size(); ++a)
      for (std::size_t b = 0; b < q2.b.size(); ++b) {
        int x = q1.b[a], y = q2.b[b];
        if (x == y) {
          shared += cost_[x];
          uf.unite(q1.label[a], p1 + q2.label[b]);
        } else if (inter_[x][y]) {
          uf.unite(q1.label[a], p1 + q2.label[b]);
        }
      }
    std::vector<int> group_phi(p1 + p2, -1);
    for (int p = 0; p < p1 + p2; ++p) {
      int phi = p < p1 ? q1.phi[p] : q2.phi[p - p1];
      int g = uf.find(p);
      group_phi[g] = group_phi[g] < 0 ? phi : ctx_.lca(group_phi[g], phi);
    }
    std::vector<char> group_psi(p1 + p2, 0);
    Cost gain = 0;
    for (int p = 0; p < p1 + p2; ++p) {
      bool first = p < p1;
      int phi = first ? q1.phi[p] : q2.phi[p - p1];
      char psi = first ? q1.psi[p] : q2.psi[p - p1];
      int g = uf.find(p);
      if (psi && phi == group_phi[g]) group_psi[g] = 1;
      if (psi && phi != group_phi[g] && (first ? c1 : c2).contains(phi)) gain += gain_[phi];
    }

    TableEntry e;
    e.b = crossing;
    std::vector<int> part_of(p1 + p2, -1);
    auto part_for = [&](int h) {
      auto a = std::lower_bound(q1.b.begin(), q1.b.end(), h);
      if (a != q1.b.end() && *a == h) return q1.label[a - q1.b.begin()];
      auto b = std::lower_bound(q2.b.begin(), q2.b.end(), h);
      return p1 + q2.label[b - q2.b.begin()];
    };
    for (int h : crossing) {
      int g = uf.find(part_for(h));
      if (part_of[g] < 0) {
        part_of[g] = static_cast<int>(e.phi.size());
        e.phi.push_back(group_phi[g]);
        e.psi.push_back(group_psi[g]);
      }
      e.label.push_back(part_of[g]);
    }
    e.value = q1.value + q2.value + shared + gain;
    e.split = split;
    e.left = i;
    e.right = j;
    offer(c, std::move(e));
  }

  void fill() {
    table_.assign(n_, std::vector<std::vector<TableEntry>>(n_));
    index_.assign(n_, std::vector<std::unordered_map<std::string, int>>(n_));
    outside_.assign(n_, std::vector<Cost>(n_, 0));
    for (int lo = 1; lo < n_; ++lo)
      for (int hi = lo; hi < n_; ++hi) outside_[lo][hi] = outside_gain({lo, hi});
    for (int v = 1; v < n_; ++v) base(v);
    for (int len = 2; len <= n_ - 1; ++len)
      for (int lo = 1; lo + len - 1 < n_; ++lo) {
        int hi = lo + len - 1;
        for (int s = lo; s < hi; ++s) merge({lo, s}, {s + 1, hi});
      }
  }

  void collect(Interval c, int entry, std::vector<int>& out) const {
    const TableEntry& e = table_[c.lo][c.hi][entry];
    if (e.split < 0) {
      out.insert(out.end(), e.b.begin(), e.b.end());
      return;
    }
    collect({c.lo, e.split}, e.left, out);
    collect({e.split + 1, c.hi}, e.right, out);
  }

  const DropContext& ctx_;
  const std::vector<VertexMask>& sets_;
  const std::vector<Cost>& cost_;
  const std::vector<Cost>& gain_;
  int alpha_;
  SlackOptions opt_;
  int n_ = 0;
  std::vector<int> usable_;
  std::vector<std::vector<char>> inter_;
  std::vector<std::vector<std::vector<TableEntry>>> table_;
  std::vector<std::vector<std::unordered_map<std::string, int>>> index_;
  std::vector<std::vector<Cost>> outside_;
  Cost incumbent_ = 0;
  std::size_t states_ = 0;
};

// Per-ring-vertex gain from per-arc weights: the weight of the arc entering each vertex.
inline std::vector<Cost> gain_by_head(const DropContext& ctx, const std::vector<Cost>& arc_weight) {
  std::vector<Cost> g(ctx.ring_size(), 0);
  for (std::size_t i = 0; i < ctx.arcs().size(); ++i) g[ctx.arcs()[i].head] = arc_weight[i];
  return g;
}

// Maximizes weight(drop(K)) - hyper_scale * c(K) over alpha-thin K; the empty set scores 0.
inline SlackResult maximize_slack(const DropContext& ctx, const std::vector<HyperLink>& hyperlinks,
                                  const std::vector<Cost>& arc_weight, int alpha, Cost hyper_scale = 1,
                                  SlackOptions opt = {}) {
  std::vector<VertexMask> sets = masks_of(hyperlinks);
  std::vector<Cost> costs;
  for (const HyperLink& h : hyperlinks) costs.push_back(h.cost * hyper_scale);
  std::vector<Cost> gain = gain_by_head(ctx, arc_weight);
  if (std::all_of(gain.begin(), gain.end(), [](Cost g) { return g == 0; })) return {};
  return SlackTable(ctx, sets, costs, gain, alpha, opt).best();
}

struct Ratio {
  Cost num = 0;
  Cost den = 0;  // den == 0 encodes infinity
  bool infinite() const { return den == 0; }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    if (b.infinite()) return !a.infinite();
    if (a.infinite()) return false;
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
};

struct RatioResult {
  std::optional<std::vector<int>> chosen;
  Ratio ratio;
  int iterations = 0;
};

// Cost of drop(K) restricted to live arcs.
inline Cost live_drop_cost(const DropContext& ctx, const std::vector<HyperLink>& hyperlinks, const std::vector<int>& k,
                           const std::vector<bool>& live, const std::vector<Cost>& arc_cost) {
  std::vector<VertexMask> sets;
  for (int h : k) sets.push_back(hyperlinks[h].mask());
  Cost total = 0;
  for (int i : ctx.drop(sets))
    if (live[i]) total += arc_cost[i];
  return total;
}

// Minimizes c(K) / c(drop(K) & live) over alpha-thin K by Dinkelbach iteration.
inline RatioResult min_ratio_thin_set(const DropContext& ctx, const std::vector<HyperLink>& hyperlinks,
                                      const std::vector<bool>& live, const std::vector<Cost>& arc_cost, int alpha,
                                      SlackOptions opt = {}) {
  RatioResult r;
  Cost min_positive = 0;
  for (std::size_t i = 0; i < live.size(); ++i)
    if (live[i] && arc_cost[i] > 0 && (min_positive == 0 || arc_cost[i] < min_positive)) min_positive = arc_cost[i];
  if (min_positive == 0) return r;
  Ratio rho;
  if (alpha >= 1)
    for (int h = 0; h < static_cast<int>(hyperlinks.size()); ++h) {
      Ratio x{hyperlinks[h].cost, live_drop_cost(ctx, hyperlinks, {h}, live, arc_cost)};
      if (!x.infinite() && x < rho) {
        rho = x;
        r.chosen = std::vector<int>{h};
      }
    }
  if (rho.infinite()) {
    Cost total = 1;
    for (const HyperLink& h : hyperlinks) total += h.cost;
    rho = {total, min_positive};
  }
  for (;;) {
    ++r.iterations;
    Cost g = std::gcd(rho.num, rho.den);
    if (g > 1) rho = {rho.num / g, rho.den / g};
    std::vector<Cost> weight(arc_cost.size(), 0);
    for (std::size_t i = 0; i < live.size(); ++i)
      if (live[i]) weight[i] = rho.num * arc_cost[i];
    SlackResult s = maximize_slack(ctx, hyperlinks, weight, alpha, rho.den, opt);
    if (s.value <= 0) break;
    Cost num = 0;
    for (int h : s.chosen) num += hyperlinks[h].cost;
    Ratio next{num, live_drop_cost(ctx, hyperlinks, s.chosen, live, arc_cost)};
    if (!(next < rho)) throw Error("ratio iteration failed to improve");
    rho = next;
    r.chosen = s.chosen;
  }
  if (r.chosen) r.ratio = rho;
  return r;
}

}  // namespace srap
