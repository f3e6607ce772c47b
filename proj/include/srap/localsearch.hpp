#pragma once

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "greedy.hpp"

namespace srap {

struct LocalParams {
  double eps_prime = 0;
  long long gamma = 2;
  int alpha = 1;
};

inline LocalParams local_params_for(double eps) {
  if (!(eps > 0)) throw Error("epsilon must be positive");
  LocalParams p;
  p.eps_prime = (eps / 2) / (1.5 + eps / 2);
  p.gamma = gamma_for(p.eps_prime);
  p.alpha = ceil_reciprocal(eps / 8);
  return p;
}

// Solution link -> witness arcs. Live links have nonempty sets; the union is a directed solution.
using WitnessMap = std::map<int, std::set<Arc>>;

inline std::vector<Arc> witness_arcs(const WitnessMap& w) {
  std::set<Arc> all;
  for (const auto& [f, arcs] : w) all.insert(arcs.begin(), arcs.end());
  return {all.begin(), all.end()};
}

// Two Euler-tour arcs per tree link of each full component of `link_ids`.
inline WitnessMap euler_witnesses(const SrapInstance& inst, const std::vector<int>& link_ids) {
  WitnessMap w;
  for (const FullComponent& fc : full_components(inst, link_ids)) {
    EulerTour tour = euler_tour(inst, fc.links);
    int k = static_cast<int>(tour.order.size());
    for (std::size_t t = 0; t < fc.links.size(); ++t)
      for (int i : {tour.subpaths[t].first, tour.subpaths[t].second})
        w[fc.links[t]].insert(Arc{tour.order[i], tour.order[(i + 1) % k]});
  }
  return w;
}

// Applies a shortening trace: a shortened arc inherits memberships, a deleted one leaves every set.
inline void apply_events(WitnessMap& w, const std::vector<ShortenEvent>& events) {
  for (const ShortenEvent& e : events)
    for (auto& [f, arcs] : w) {
      if (!arcs.erase(e.from)) continue;
      if (e.to) arcs.insert(*e.to);
    }
}

inline void purge_empty(WitnessMap& w) {
  std::erase_if(w, [](const auto& entry) { return entry.second.empty(); });
}

// Shortens the witness union to a non-shortenable (hence R-special) solution and purges empty sets.
inline void reshorten(const CompleteInstance& ci, WitnessMap& w) {
  std::vector<ShortenEvent> events;
  std::vector<Arc> kept = make_nonshortenable(ci, witness_arcs(w), &events);
  apply_events(w, events);
  purge_empty(w);
  if (witness_arcs(w) != kept) throw Error("witness bookkeeping diverged from the shortened solution");
}

inline WitnessMap initial_witnesses(const CompleteInstance& ci, const std::vector<int>& solution) {
  const SrapInstance& inst = ci.base();
  if (!inst.all_terminals()) throw Error("local search requires every ring vertex to be a terminal");
  if (!links_feasible(inst, solution)) throw Error("initial solution is infeasible");
  WitnessMap w = euler_witnesses(inst, solution);
  if (!is_feasible_directed(inst, witness_arcs(w))) throw Error("initial witnesses are infeasible");
  reshorten(ci, w);
  return w;
}

inline Cost link_cost(const SrapInstance& inst, int id) { return inst.links()[id].cost; }

// Twice the potential: 2c(f) for one witness, 3c(f) for two or more.
inline Cost potential_doubled(const SrapInstance& inst, const WitnessMap& w) {
  Cost total = 0;
  for (const auto& [f, arcs] : w) total += (arcs.size() == 1 ? 2 : 3) * link_cost(inst, f);
  return total;
}

inline long long witness_lcm(const WitnessMap& w) {
  long long l = 1;
  for (const auto& [f, arcs] : w) l = std::lcm(l, static_cast<long long>(arcs.size()));
  return l;
}

// scale * c̄(u) for every witness arc; `scale` must be a multiple of every witness-set size.
inline std::map<Arc, Cost> witness_cost(const SrapInstance& inst, const WitnessMap& w, Cost scale = 2) {
  std::map<Arc, Cost> out;
  for (const auto& [f, arcs] : w) {
    if (scale % static_cast<Cost>(arcs.size()) != 0) throw Error("witness cost scale is not a common multiple");
    for (Arc a : arcs) out[a] += link_cost(inst, f) * scale / static_cast<Cost>(arcs.size());
  }
  return out;
}

inline std::vector<int> witness_links(const WitnessMap& w) {
  std::vector<int> s;
  for (const auto& [f, arcs] : w) s.push_back(f);
  return s;
}

inline SolveResult local_search(const SrapInstance& inst, const SolveOptions& opt = {}) {
  if (!inst.all_terminals()) throw Error("local search requires every ring vertex to be a terminal");
  SolveResult res;
  LocalParams params = local_params_for(opt.epsilon);
  res.gamma_theory = params.gamma;
  res.alpha_theory = params.alpha;
  res.gamma = effective_gamma(inst, params.gamma, opt.gamma_cap);
  res.alpha = effective_alpha(params.alpha, opt);

  CompleteInstance ci = complete(inst);
  HyperSrapInstance hyper = generate_hyperlinks(inst, static_cast<int>(res.gamma));
  const std::vector<HyperLink>& hs = hyper.hyperlinks();
  std::vector<int> start = initial_solution(inst, hs, opt);
  for (int id : start) res.initial_cost += link_cost(inst, id);

  WitnessMap w = initial_witnesses(ci, start);
  Cost phi = potential_doubled(inst, w);
  res.initial_potential = static_cast<long double>(phi) / 2;
  long double n = inst.ring_size();
  for (;;) {
    DropContext ctx(inst, witness_arcs(w));
    Cost scale = witness_lcm(w);
    std::map<Arc, Cost> cbar = witness_cost(inst, w, 2 * scale);
    std::vector<Cost> weight;
    for (Arc a : ctx.arcs()) weight.push_back(cbar.at(a));
    SlackResult z = maximize_slack(ctx, hs, weight, res.alpha, 3 * scale, opt.slack);
    if (z.chosen.empty() || z.value <= 0) break;

    WitnessMap next = w;
    std::set<Arc> dropped;
    for (int i : ctx.drop(masks_at(hs, z.chosen))) dropped.insert(ctx.arcs()[i]);
    for (auto& [f, arcs] : next)
      for (Arc a : dropped) arcs.erase(a);
    std::vector<HyperLink> added;
    for (int h : z.chosen) added.push_back(hs[h]);
    for (auto& [f, arcs] : euler_witnesses(inst, realize_solution(added))) next[f].insert(arcs.begin(), arcs.end());
    purge_empty(next);
    if (!is_feasible_directed(inst, witness_arcs(next))) throw Error("local move lost directed feasibility");
    reshorten(ci, next);
    Cost phi_next = potential_doubled(inst, next);
    if (!(12 * n * static_cast<long double>(phi_next) <= (12 * n - opt.epsilon) * static_cast<long double>(phi))) break;

    IterationRecord rec;
    rec.index = ++res.moves;
    for (const HyperLink& h : added) {
      rec.chosen.push_back(h.vertices);
      rec.chosen_cost += h.cost;
    }
    for (Arc a : dropped) rec.dropped_cost += ci.cost_of(a);
    rec.remaining = witness_arcs(next).size();
    rec.potential = static_cast<long double>(phi_next) / 2;
    res.log.push_back(std::move(rec));
    w = std::move(next);
    phi = phi_next;
  }
  res.links = witness_links(w);
  for (int id : res.links) res.cost += link_cost(inst, id);
  res.directed_cost = arcs_cost(ci, witness_arcs(w));
  res.verified = verify_solution(inst, res.links);
  if (!res.verified) throw Error("local search output failed verification");
  return res;
}

}  // namespace srap
