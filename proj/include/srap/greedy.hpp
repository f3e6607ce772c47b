#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "completion.hpp"
#include "dp.hpp"
#include "dropcalc.hpp"
#include "oracle.hpp"
#include "rspecial.hpp"
#include "steiner.hpp"

namespace srap {

struct GreedyParams {
  double eps_prime = 0;
  long long gamma = 2;
  int alpha = 4;
};

inline GreedyParams params_for(double eps) {
  if (!(eps > 0)) throw Error("epsilon must be positive");
  GreedyParams p;
  p.eps_prime = (eps / 2) / (1 + std::log(2.0) + eps / 2);
  p.gamma = gamma_for(p.eps_prime);
  p.alpha = 4 * ceil_reciprocal(eps / 4);
  return p;
}

struct SolveOptions {
  double epsilon = 2;
  int gamma_cap = 4;
  int alpha_cap = 3;
  std::optional<int> alpha_override;
  OracleBudget budget;
  bool cover_start = false;  // skip the oracle and start from the greedy cover
  SlackOptions slack;
};

struct IterationRecord {
  int index = 0;
  std::vector<std::vector<int>> chosen;  // vertex sets added
  Cost chosen_cost = 0;
  Cost dropped_cost = 0;
  Ratio ratio;
  bool fallback = false;
  std::size_t remaining = 0;
  long double potential = 0;
};

struct SolveResult {
  std::vector<int> links;
  Cost cost = 0;
  Cost initial_cost = 0;
  Cost directed_cost = 0;
  long long gamma = 0;
  long long gamma_theory = 0;
  int alpha = 0;
  int alpha_theory = 0;
  bool verified = false;
  int moves = 0;
  long double initial_potential = 0;
  std::vector<IterationRecord> log;
};

inline int effective_gamma(const SrapInstance& inst, long long theory, int cap) {
  long long g = std::min<long long>(theory, cap);
  g = std::min<long long>(g, inst.ring_size());
  return static_cast<int>(std::max<long long>(g, 2));
}

inline int effective_alpha(int theory, const SolveOptions& opt) {
  if (opt.alpha_override) return *opt.alpha_override;
  return std::min(theory, opt.alpha_cap);
}

// Greedy cut cover with hyper-links (best newly-covered-cuts per cost), then reverse deletion.
inline std::vector<int> greedy_cover(const SrapInstance& inst, const std::vector<HyperLink>& hs) {
  std::vector<Interval> cuts = dangerous_cuts(inst);
  std::vector<bool> covered(cuts.size(), false);
  std::vector<HyperLink> picked;
  for (;;) {
    int best = -1;
    long long best_count = 0;
    Cost best_cost = 0;
    for (int h = 0; h < static_cast<int>(hs.size()); ++h) {
      long long count = 0;
      for (std::size_t c = 0; c < cuts.size(); ++c)
        if (!covered[c] && covers(hs[h], cuts[c])) ++count;
      if (count == 0) continue;
      // count / cost > best_count / best_cost, with zero cost ranking first
      bool better = best < 0 || (hs[h].cost * best_count < best_cost * count);
      if (better) {
        best = h;
        best_count = count;
        best_cost = hs[h].cost;
      }
    }
    if (best < 0) break;
    picked.push_back(hs[best]);
    for (std::size_t c = 0; c < cuts.size(); ++c)
      if (covers(hs[best], cuts[c])) covered[c] = true;
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) throw InfeasibleError("instance is infeasible");
  std::vector<int> links = realize_solution(picked);
  std::vector<int> order = links;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return inst.links()[a].cost > inst.links()[b].cost; });
  for (int id : order) {
    std::vector<int> without;
    for (int x : links)
      if (x != id) without.push_back(x);
    if (links_feasible(inst, without)) links = without;
  }
  return links;
}

inline std::vector<int> initial_solution(const SrapInstance& inst, const std::vector<HyperLink>& hs,
                                         const SolveOptions& opt) {
  std::vector<int> all(inst.links().size());
  std::iota(all.begin(), all.end(), 0);
  if (!links_feasible(inst, all)) throw InfeasibleError("instance is infeasible");
  if (!opt.cover_start && priced_link_count(inst.links()) <= opt.budget.max_links) {
    ExactResult r = exact_srap(inst, opt.budget);
    if (!r.cost) throw InfeasibleError("instance is infeasible");
    return r.links;
  }
  return greedy_cover(inst, hs);
}

inline Cost arc_total(const std::vector<Cost>& arc_cost, const std::vector<int>& idx) {
  Cost total = 0;
  for (int i : idx) total += arc_cost[i];
  return total;
}

// Relative greedy over an R-special directed start.
inline SolveResult relative_greedy(const SrapInstance& inst, const SolveOptions& opt = {}) {
  SolveResult res;
  GreedyParams params = params_for(opt.epsilon);
  res.gamma_theory = params.gamma;
  res.alpha_theory = params.alpha;
  res.gamma = effective_gamma(inst, params.gamma, opt.gamma_cap);
  res.alpha = effective_alpha(params.alpha, opt);

  CompleteInstance ci = complete(inst);
  HyperSrapInstance hyper = generate_hyperlinks(inst, static_cast<int>(res.gamma));
  const std::vector<HyperLink>& hs = hyper.hyperlinks();
  std::vector<int> start = initial_solution(inst, hs, opt);
  for (int id : start) res.initial_cost += inst.links()[id].cost;

  TwoApproxResult two = two_approx_rspecial(ci, start);
  res.directed_cost = two.cost;
  DropContext ctx(inst, two.arcs);
  const std::vector<Arc>& f0 = ctx.arcs();
  std::vector<Cost> arc_cost;
  for (Arc a : f0) arc_cost.push_back(ci.cost_of(a));

  std::vector<bool> live(f0.size(), true);
  std::size_t remaining = f0.size();
  std::vector<HyperLink> s;
  while (remaining > 0) {
    IterationRecord rec;
    rec.index = static_cast<int>(res.log.size()) + 1;
    RatioResult best = min_ratio_thin_set(ctx, hs, live, arc_cost, res.alpha, opt.slack);
    std::vector<HyperLink> z;
    if (best.chosen && !(Ratio{1, 1} < best.ratio)) {
      for (int h : *best.chosen) z.push_back(hs[h]);
      rec.ratio = best.ratio;
    } else {
      int pick = -1;
      Cost pick_gain = 0;
      for (int i = 0; i < static_cast<int>(f0.size()); ++i) {
        if (!live[i]) continue;
        Cost gain = arc_cost[i] - kappa_cost(ci, f0[i]);
        if (pick < 0 || gain > pick_gain || (gain == pick_gain && f0[i] < f0[pick])) {
          pick = i;
          pick_gain = gain;
        }
      }
      for (int l : kappa(ci, f0[pick])) z.push_back(hyperlink_of(ci.undirected()[l]));
      rec.fallback = true;
    }
    std::vector<int> dropped;
    for (int i : ctx.drop(masks_of(z)))
      if (live[i]) dropped.push_back(i);
    if (dropped.empty()) throw Error("greedy step dropped nothing");
    for (const HyperLink& h : z) {
      rec.chosen.push_back(h.vertices);
      rec.chosen_cost += h.cost;
      s.push_back(h);
    }
    rec.dropped_cost = arc_total(arc_cost, dropped);
    if (rec.fallback) rec.ratio = {rec.chosen_cost, rec.dropped_cost};
    for (int i : dropped) live[i] = false;
    remaining -= dropped.size();
    rec.remaining = remaining;
    std::vector<Arc> rest;
    for (std::size_t i = 0; i < f0.size(); ++i)
      if (live[i]) rest.push_back(f0[i]);
    if (!is_feasible_mixed(inst, s, rest)) throw Error("greedy lost mixed feasibility");
    res.log.push_back(std::move(rec));
  }
  res.links = realize_solution(s);
  for (int id : res.links) res.cost += inst.links()[id].cost;
  res.verified = verify_solution(inst, res.links);
  if (!res.verified) throw Error("greedy output failed verification");
  return res;
}

}  // namespace srap
