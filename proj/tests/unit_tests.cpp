#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "srap/srap.hpp"

using namespace srap;

namespace {

// Ring 0..3, links {1,3} and {0,2} at unit cost.
SrapInstance r4(std::vector<int> terminals = {0, 1, 2, 3}) {
  return SrapInstance(4, 0, std::move(terminals), {{1, 3, 1}, {0, 2, 1}});
}
SrapInstance r4s() { return r4({0, 1, 3}); }

// Every ring pair linked at unit cost.
SrapInstance complete_ring(int n) {
  std::vector<Link> links;
  std::vector<int> terminals;
  for (int u = 0; u < n; ++u) {
    terminals.push_back(u);
    for (int v = u + 1; v < n; ++v) links.push_back({u, v, 1});
  }
  return SrapInstance(n, 0, terminals, links);
}

VertexMask mask(std::initializer_list<int> vs) {
  VertexMask m = 0;
  for (int v : vs) m |= VertexMask{1} << v;
  return m;
}

HyperLink hl(std::vector<int> vs, Cost c = 1) { return make_hyperlink(std::move(vs), c); }

const std::vector<Arc> kPath = {{0, 1}, {1, 2}, {2, 3}};

// Links between every vertex pair of `count`, costs 1..3 by a fixed pattern.
std::vector<Link> dense_links(int count) {
  std::vector<Link> links;
  for (int u = 0; u < count; ++u)
    for (int v = u + 1; v < count; ++v) links.push_back({u, v, (u * 7 + v * 3) % 3 + 1});
  return links;
}

std::vector<std::pair<int, int>> cycle_edges(std::vector<int> vs) {
  std::vector<std::pair<int, int>> e;
  for (std::size_t i = 0; i < vs.size(); ++i) e.emplace_back(vs[i], vs[(i + 1) % vs.size()]);
  return e;
}

std::vector<std::pair<int, int>> two_triangles() {
  auto e = cycle_edges({0, 1, 2});
  auto f = cycle_edges({0, 3, 4});
  e.insert(e.end(), f.begin(), f.end());
  return e;
}

std::vector<std::pair<int, int>> k4() { return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}; }

}  // namespace

// core model

TEST(Core, ValidFixtures) {
  EXPECT_EQ(r4().ring_size(), 4);
  EXPECT_EQ(r4s().terminals().size(), 3u);
  EXPECT_THROW(SrapInstance(4, 0, {1, 2}, {}), Error);
}

TEST(Core, DangerousCuts) {
  std::vector<Interval> all = {{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};
  EXPECT_EQ(dangerous_cuts(r4()), all);
  std::vector<Interval> no22 = {{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}};
  EXPECT_EQ(dangerous_cuts(r4s()), no22);
  EXPECT_EQ(dangerous_cuts(SrapInstance(3, 0, {0, 1, 2}, {})).size(), 3u);
}

TEST(Core, CoversAndEnters) {
  EXPECT_TRUE(covers(hl({1, 3}), {1, 2}));
  EXPECT_FALSE(covers(hl({1, 3}), {1, 3}));
  EXPECT_FALSE(covers(hl({0, 2}), {1, 1}));
  EXPECT_TRUE(enters(Arc{0, 1}, {1, 2}));
  EXPECT_FALSE(enters(Arc{1, 2}, {1, 2}));
  EXPECT_TRUE(enters(Arc{2, 3}, {3, 3}));
  for (Interval c : all_ring_intervals(6))
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 6; ++v) EXPECT_FALSE(enters(Arc{u, v}, c) && enters(Arc{v, u}, c));
}

TEST(Core, IntervalOf) {
  EXPECT_EQ(interval_of(mask({1, 3})), (Interval{1, 3}));
  EXPECT_EQ(interval_of(mask({2, 4})), (Interval{2, 4}));
  EXPECT_EQ(interval_of(mask({0, 3})), (Interval{0, 3}));
}

TEST(Core, HyperLinkNeedsTwoVertices) { EXPECT_THROW(hl({2, 2}), Error); }

// feasibility

TEST(Feasibility, Intersecting) {
  EXPECT_TRUE(intersecting(hl({1, 3}), hl({0, 2})));
  EXPECT_TRUE(intersecting(hl({0, 3}), hl({2, 4})));
  EXPECT_FALSE(intersecting(hl({0, 1}), hl({3, 4})));
  EXPECT_TRUE(intersecting(hl({0, 2}), hl({2, 4})));
  EXPECT_FALSE(intersecting(hl({0, 4}), hl({1, 2})));
}

TEST(Feasibility, Hyper) {
  EXPECT_TRUE(is_feasible_hyper(r4(), {hl({1, 3}), hl({0, 2})}));
  EXPECT_FALSE(is_feasible_hyper(r4(), {hl({1, 3})}));
  EXPECT_FALSE(is_feasible_hyper(r4s(), {hl({1, 3})}));
  EXPECT_FALSE(is_feasible_hyper_by_cuts(r4s(), {hl({1, 3})}));
}

TEST(Feasibility, Directed) {
  EXPECT_TRUE(is_feasible_directed(r4(), kPath));
  EXPECT_FALSE(is_feasible_directed(r4(), {{0, 1}, {1, 2}}));
  EXPECT_FALSE(is_feasible_directed(r4s(), {}));
}

TEST(Feasibility, Mixed) {
  EXPECT_TRUE(is_feasible_mixed(r4(), {hl({0, 2})}, {{0, 1}, {2, 3}}));
  EXPECT_TRUE(is_feasible_mixed(r4(), {}, kPath));
  EXPECT_FALSE(is_feasible_mixed(r4(), {hl({1, 3})}, {}));
}

TEST(Feasibility, EdgeConnectivity) {
  EXPECT_TRUE(verify_edge_connectivity({3, cycle_edges({0, 1, 2})}, {0, 1, 2}, 2));
  EXPECT_FALSE(verify_edge_connectivity({3, {{0, 1}, {1, 2}}}, {0, 1, 2}, 2));
  EXPECT_TRUE(verify_edge_connectivity(ring_with_links(r4(), {0, 1}), {0, 1, 2, 3}, 3));
  EXPECT_TRUE(verify_solution(r4(), {0, 1}));
  EXPECT_FALSE(verify_solution(r4(), {0}));
}

TEST(Feasibility, PathCriterionAgreesWithCuts) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    SrapInstance inst = generate_srap(seed, {6, 2, 10, 5, seed % 2 == 0});
    HyperSrapInstance hyper = generate_hyperlinks(inst, 3);
    Rng rng(seed);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<HyperLink> s;
      for (const HyperLink& h : hyper.hyperlinks())
        if (rng.chance(1, 4)) s.push_back(h);
      EXPECT_EQ(is_feasible_hyper(inst, s), is_feasible_hyper_by_cuts(inst, s));
    }
    std::vector<int> all(inst.links().size());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(links_feasible(inst, all), verify_solution(inst, all));
  }
}

// completion

TEST(Completion, Undirected) {
  CompleteInstance ci = complete(r4());
  EXPECT_EQ(ci.undirected_link(1, 2), nullptr);
  ASSERT_NE(ci.undirected_link(1, 3), nullptr);
  EXPECT_EQ(ci.undirected_link(1, 3)->cost, 1);

  SrapInstance star(3, 1, {0, 1, 2}, {{1, 3, 1}, {3, 2, 1}});
  CompleteInstance cs = complete(star);
  const CompletedLink* l = cs.undirected_link(1, 2);
  ASSERT_NE(l, nullptr);
  EXPECT_EQ(l->cost, 2);
  EXPECT_EQ(l->path, (std::vector<int>{1, 3, 2}));
  EXPECT_EQ(l->links, (std::vector<int>{0, 1}));
}

TEST(Completion, ShadowsAndShortenings) {
  CompleteInstance ci = complete(r4());
  for (auto [u, v] : std::vector<std::pair<int, int>>{{1, 3}, {3, 1}, {2, 3}, {2, 1}, {0, 2}, {2, 0}, {1, 2}, {1, 0}}) {
    ASSERT_TRUE(ci.shadow_layer(u, v).has_value()) << u << "->" << v;
    EXPECT_EQ(ci.shadow_layer(u, v)->cost, 1);
  }
  EXPECT_EQ(ci.shadow_layer(2, 3)->kind, ProvenanceKind::shortening);
  EXPECT_EQ(ci.shadow_layer(1, 3)->kind, ProvenanceKind::shadow);
  EXPECT_FALSE(ci.shadow_layer(3, 2).has_value());
}

TEST(Completion, DirectedClosure) {
  CompleteInstance ci = complete(r4());
  EXPECT_EQ(ci.cost(3, 2), 2);
  EXPECT_EQ(ci.directed_links().size(), 12u);
  EXPECT_TRUE(complete(SrapInstance(4, 0, {0, 1}, {})).directed_links().empty());

  SrapInstance chain(3, 0, {0, 1, 2}, {{0, 1, 2}, {1, 2, 3}});
  EXPECT_EQ(complete(chain).cost(0, 2), 5);
}

TEST(Completion, Fixpoint) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SrapInstance inst = generate_srap(seed, {7, 2, 12, 9, false});
    CompleteInstance a = complete(inst);
    CompleteInstance b = complete(completed_instance(a));
    for (int u = 0; u < 7; ++u)
      for (int v = 0; v < 7; ++v) EXPECT_EQ(a.cost(u, v), b.cost(u, v));
  }
}

TEST(Completion, Kappa) {
  CompleteInstance ci = complete(r4());
  int l13 = *ci.undirected_index(1, 3), l02 = *ci.undirected_index(0, 2);
  EXPECT_EQ(kappa(ci, Arc{2, 3}), (std::vector<int>{l13}));
  std::vector<int> k32 = kappa(ci, Arc{3, 2});
  std::sort(k32.begin(), k32.end());
  std::vector<int> both{l13, l02};
  std::sort(both.begin(), both.end());
  EXPECT_EQ(k32, both);
  EXPECT_EQ(kappa_cost(ci, Arc{3, 2}), 2);
  EXPECT_EQ(kappa(ci, Arc{1, 3}).size(), 1u);
  EXPECT_EQ(kappa_cost(ci, Arc{1, 3}), 1);
}

// steiner components

TEST(Steiner, GammaRule) {
  EXPECT_EQ(gamma_for(1), 2);
  EXPECT_EQ(gamma_for(0.5), 4);
  EXPECT_EQ(gamma_for(0.3707), 8);
  EXPECT_THROW(gamma_for(0), Error);
}

TEST(Steiner, DreyfusWagner) {
  std::vector<WeightedEdge> star = {{3, 0, 1, 0}, {3, 1, 1, 1}, {3, 2, 1, 2}};
  auto t = dreyfus_wagner(4, star, {0, 1, 2});
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->cost, 3);
  EXPECT_EQ(t->edges, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(dreyfus_wagner(4, star, {0, 1})->cost, 2);
  EXPECT_FALSE(dreyfus_wagner(4, {{0, 1, 1, 0}}, {0, 2}).has_value());
  auto brute = steiner_tree_bruteforce(4, star, {0, 1, 2});
  ASSERT_TRUE(brute.has_value());
  EXPECT_EQ(brute->cost, 3);
}

TEST(Steiner, Hyperlinks) {
  for (const SrapInstance& inst : {r4(), r4s()}) {
    HyperSrapInstance h = generate_hyperlinks(inst, 2);
    ASSERT_EQ(h.hyperlinks().size(), 2u);
    std::set<std::vector<int>> sets;
    for (const HyperLink& x : h.hyperlinks()) {
      sets.insert(x.vertices);
      EXPECT_EQ(x.cost, 1);
    }
    EXPECT_EQ(sets, (std::set<std::vector<int>>{{0, 2}, {1, 3}}));
  }
  EXPECT_EQ(generate_hyperlinks(complete_ring(5), 5).hyperlinks().size(), 26u);
}

TEST(Steiner, Realize) {
  HyperSrapInstance h = generate_hyperlinks(r4(), 2);
  for (const HyperLink& x : h.hyperlinks())
    if (x.vertices == std::vector<int>{1, 3}) {
      EXPECT_EQ(realize_solution({x}), (std::vector<int>{0}));
    }
  SrapInstance star(3, 1, {0, 1, 2}, {{0, 3, 1}, {1, 3, 1}, {2, 3, 1}});
  HyperSrapInstance hs = generate_hyperlinks(star, 3);
  for (const HyperLink& x : hs.hyperlinks())
    if (x.vertices.size() == 3) {
      EXPECT_EQ(x.cost, 3);
      EXPECT_EQ(realize_solution({x, x}), (std::vector<int>{0, 1, 2}));
    }
}

// rspecial

TEST(RSpecial, EulerCycleOfOneLink) {
  SrapInstance inst = complete_ring(4);
  DirectedCycle c = euler_cycle(inst, {0});
  EXPECT_EQ(c.nodes(), mask({0, 1}));
  EXPECT_EQ(cycle_cost(complete(inst), c), 2);
}

TEST(RSpecial, MergeInterleaved) {
  DirectedCycle s{{0, 3}}, a{{2, 4}};
  DirectedCycle m = merge_cycles(s, a);
  EXPECT_EQ(m.seq, (std::vector<int>{0, 3, 4, 2}));
  EXPECT_EQ(m.nodes(), mask({0, 2, 3, 4}));
  EXPECT_THROW(merge_cycles(DirectedCycle{{0, 1}}, DirectedCycle{{3, 4}}), Error);
}

TEST(RSpecial, MergeSharedVertex) {
  SrapInstance inst = complete_ring(6);
  CompleteInstance ci = complete(inst);
  DirectedCycle s{{0, 2}}, a{{2, 4}};
  DirectedCycle m = merge_cycles(s, a);
  EXPECT_EQ(m.nodes(), mask({0, 2, 4}));
  EXPECT_EQ(cycle_cost(ci, m), cycle_cost(ci, s) + cycle_cost(ci, a));
}

TEST(RSpecial, NonShortenable) {
  CompleteInstance ci = complete(complete_ring(4));
  EXPECT_EQ(make_nonshortenable(ci, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), kPath);
  EXPECT_EQ(make_nonshortenable(ci, kPath), kPath);
}

TEST(RSpecial, Predicate) {
  EXPECT_TRUE(check_r_special(r4(), kPath));
  RSpecialReport two_right = check_r_special_report(r4(), {{0, 1}, {0, 2}, {2, 3}});
  EXPECT_FALSE(two_right.one_per_direction);
  EXPECT_FALSE(two_right.ok());
  RSpecialReport steiner = check_r_special_report(r4s(), {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_FALSE(steiner.terminals_only);
  EXPECT_FALSE(check_r_special(complete_ring(5), {{0, 2}, {0, 1}, {1, 3}, {2, 4}}));
}

TEST(RSpecial, TwoApprox) {
  for (const SrapInstance& inst : {r4(), r4s()}) {
    CompleteInstance ci = complete(inst);
    ExactResult opt = exact_srap(inst);
    TwoApproxResult r = two_approx_rspecial(ci, opt.links);
    EXPECT_TRUE(check_r_special(inst, r.arcs));
    EXPECT_TRUE(is_feasible_directed(inst, r.arcs));
    EXPECT_LE(r.cost, 2 * *opt.cost);
    EXPECT_EQ(r.input_cost, *opt.cost);
  }
  EXPECT_EQ(build_terminal_cycle(complete(r4s()), {0, 1}).nodes(), mask({0, 1, 3}));
}

// dropcalc

TEST(Drop, BadIntervals) {
  DropContext ctx(r4(), kPath);
  EXPECT_EQ(ctx.bad_interval(3), (Interval{3, 3}));
  EXPECT_EQ(ctx.bad_interval(2), (Interval{2, 3}));
  EXPECT_EQ(ctx.bad_interval(1), (Interval{1, 3}));
}

TEST(Drop, Responsibility) {
  DropContext ctx(r4(), kPath);
  ResponsibilityIndex r = ctx.responsibility(r4());
  EXPECT_EQ(r.owner.size(), 6u);
  for (const auto& cuts : r.cuts_of) EXPECT_FALSE(cuts.empty());
  EXPECT_EQ(r.cuts_of[2], (std::vector<Interval>{{3, 3}}));
}

TEST(Drop, ArtificialExtension) {
  EXPECT_TRUE(DropContext(r4(), kPath).extension().artificial.empty());
  DropContext ctx(r4s(), {{0, 1}, {1, 3}});
  EXPECT_EQ(ctx.extension().artificial, (std::vector<Arc>{{3, 2}}));
}

TEST(Drop, PathCriterion) {
  DropContext ctx(r4(), kPath);
  EXPECT_EQ(ctx.drop({mask({2, 3})}), (std::vector<int>{2}));
  EXPECT_EQ(ctx.drop({mask({1, 3}), mask({0, 2})}), (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(ctx.drop({}).empty());
  EXPECT_EQ(brute_force_drop(r4(), kPath, {mask({2, 3})}), (std::vector<int>{2}));
  EXPECT_EQ(brute_force_drop(r4(), kPath, {mask({1, 3}), mask({0, 2})}), (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(brute_force_drop(r4(), kPath, {}).empty());
}

TEST(Drop, LcaFormula) {
  DropContext ctx(r4(), kPath);
  EXPECT_EQ(ctx.lca(mask({2, 3})), 2);
  EXPECT_EQ(ctx.drop_connected_lca({mask({2, 3})}), (std::vector<int>{2}));
  EXPECT_EQ(ctx.drop_connected_lca({mask({1, 3})}), (std::vector<int>{2}));
  EXPECT_EQ(ctx.drop_connected_lca({mask({0, 1, 2, 3})}), (std::vector<int>{0, 1, 2}));
}

// dp optimizer

TEST(Dp, ZeroWeightsGainNothing) {
  DropContext ctx(r4(), kPath);
  SlackResult r = maximize_slack(ctx, {hl({1, 3}), hl({0, 2})}, {0, 0, 0}, 2);
  EXPECT_TRUE(r.chosen.empty());
  EXPECT_EQ(r.value, 0);
}

TEST(Dp, SlackMatchesBruteForce) {
  std::vector<HyperLink> hs = {hl({1, 3}), hl({0, 2}), hl({2, 3}, 2)};
  DropContext ctx(r4(), kPath);
  for (int alpha = 1; alpha <= 3; ++alpha) {
    std::vector<Cost> w = {3, 2, 4};
    SlackResult dp = maximize_slack(ctx, hs, w, alpha);
    SlackResult brute = brute_force_max_slack(r4(), kPath, hs, w, alpha);
    EXPECT_EQ(dp.value, brute.value) << "alpha " << alpha;
  }
}

TEST(Dp, MinRatioFixture) {
  std::vector<HyperLink> hs = {hl({1, 3}), hl({0, 2})};
  DropContext ctx(r4(), kPath);
  std::vector<Cost> cost = {1, 1, 1};
  RatioResult r = min_ratio_thin_set(ctx, hs, {true, true, true}, cost, 2);
  ASSERT_TRUE(r.chosen.has_value());
  EXPECT_EQ(*r.chosen, (std::vector<int>{0, 1}));
  EXPECT_EQ(r.ratio.num * 3, r.ratio.den * 2);
  RatioResult brute = brute_force_min_ratio(r4(), kPath, hs, {true, true, true}, cost, 2);
  EXPECT_EQ(brute.ratio.num * 3, brute.ratio.den * 2);

  RatioResult none = min_ratio_thin_set(ctx, hs, {false, false, false}, cost, 2);
  EXPECT_FALSE(none.chosen.has_value());
  EXPECT_TRUE(none.ratio.infinite());
  EXPECT_TRUE(brute_force_min_ratio(r4(), kPath, hs, {false, false, false}, cost, 2).ratio.infinite());
}

TEST(Dp, RatioOrder) {
  EXPECT_TRUE((Ratio{2, 3} < Ratio{1, 1}));
  EXPECT_TRUE((Ratio{5, 1} < Ratio{1, 0}));
  EXPECT_FALSE((Ratio{1, 0} < Ratio{1, 0}));
}

// greedy

TEST(Greedy, Params) {
  GreedyParams p = params_for(2);
  EXPECT_NEAR(p.eps_prime, 1 / (2 + std::log(2.0)), 1e-12);
  EXPECT_EQ(p.gamma, 8);
  EXPECT_EQ(p.alpha, 8);
  EXPECT_EQ(params_for(4).alpha, 4);
  EXPECT_EQ(params_for(1000).alpha, 4);
  EXPECT_THROW(params_for(0), Error);
}

TEST(Greedy, R4) {
  SolveResult r = relative_greedy(r4());
  EXPECT_EQ(r.cost, 2);
  EXPECT_EQ(r.links, (std::vector<int>{0, 1}));
  EXPECT_TRUE(r.verified);
  EXPECT_LE(r.directed_cost, 4);
}

TEST(Greedy, R4S) {
  SolveResult r = relative_greedy(r4s());
  EXPECT_EQ(r.cost, *exact_srap(r4s()).cost);
  EXPECT_TRUE(verify_solution(r4s(), r.links));
}

TEST(Greedy, CoverStartAndCaps) {
  SolveOptions o;
  o.cover_start = true;
  o.alpha_override = 1;
  SolveResult r = relative_greedy(r4(), o);
  EXPECT_EQ(r.cost, 2);
  EXPECT_EQ(r.alpha, 1);
  EXPECT_EQ(r.gamma_theory, 8);
  EXPECT_EQ(r.gamma, 4);
}

TEST(Greedy, InfeasibleRejected) {
  EXPECT_THROW(relative_greedy(SrapInstance(4, 0, {0, 1, 2, 3}, {{1, 3, 1}})), InfeasibleError);
}

// local search

TEST(Local, Params) {
  LocalParams p = local_params_for(1);
  EXPECT_NEAR(p.eps_prime, 0.25, 1e-12);
  EXPECT_EQ(p.alpha, 8);
  EXPECT_EQ(local_params_for(8).alpha, 1);
}

TEST(Local, PotentialAndWitnessCost) {
  SrapInstance inst(4, 0, {0, 1, 2, 3}, {{1, 3, 4}, {0, 2, 2}});
  WitnessMap w;
  w[0] = {Arc{0, 1}, Arc{1, 2}};
  w[1] = {Arc{1, 2}};
  EXPECT_EQ(potential_doubled(inst, w), 16);
  std::map<Arc, Cost> c = witness_cost(inst, w, 2);
  EXPECT_EQ(c.at(Arc{1, 2}), 8);
  EXPECT_EQ(c.at(Arc{0, 1}), 4);
  EXPECT_EQ(c.count(Arc{2, 3}), 0u);
  EXPECT_EQ(potential_doubled(inst, {}), 0);
  EXPECT_THROW(witness_cost(inst, w, 3), Error);
}

TEST(Local, SingleLinkWitnesses) {
  SrapInstance inst(3, 0, {0, 1, 2}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  WitnessMap w = euler_witnesses(inst, {0});
  EXPECT_EQ(w.at(0), (std::set<Arc>{{0, 1}, {1, 0}}));
  WitnessMap init = initial_witnesses(complete(inst), {0, 1});
  EXPECT_TRUE(check_r_special(inst, witness_arcs(init)));
}

TEST(Local, R4) {
  SolveOptions o;
  o.epsilon = 1;
  SolveResult r = local_search(r4(), o);
  EXPECT_EQ(r.cost, 2);
  EXPECT_TRUE(r.verified);
  EXPECT_THROW(local_search(r4s(), o), Error);
}

// oracle

TEST(Oracle, ExactSrap) {
  ExactResult a = exact_srap(r4());
  EXPECT_EQ(a.cost, 2);
  EXPECT_EQ(a.links, (std::vector<int>{0, 1}));
  EXPECT_EQ(exact_srap(r4s()).cost, 2);
  EXPECT_FALSE(exact_srap(SrapInstance(4, 0, {0, 1}, {})).cost.has_value());
  OracleBudget tiny;
  tiny.max_links = 1;
  EXPECT_THROW(exact_srap(r4(), tiny), Error);
}

TEST(Oracle, ZeroCostLinksAreFree) {
  SrapInstance inst(4, 0, {0, 1, 2, 3}, {{1, 3, 0}, {0, 2, 1}, {0, 1, 5}});
  OracleBudget b;
  b.max_links = 2;
  EXPECT_EQ(exact_srap(inst, b).cost, 1);
}

TEST(Oracle, Thinness) {
  EXPECT_TRUE(is_alpha_thin(4, {mask({1, 3})}, 1));
  EXPECT_TRUE(is_alpha_thin(4, {mask({1, 3}), mask({0, 2})}, 2));
  EXPECT_TRUE(is_alpha_thin(4, {}, 1));
  // Frozen: [1,3] must be split, and both splits contain an interval covered twice.
  EXPECT_FALSE(is_alpha_thin(4, {mask({1, 3}), mask({0, 2})}, 1));
}

TEST(Oracle, DropOfEverything) {
  std::vector<VertexMask> all = masks_of(generate_hyperlinks(r4(), 4).hyperlinks());
  EXPECT_EQ(brute_force_drop(r4(), kPath, all), (std::vector<int>{0, 1, 2}));
}

// Minimum over every link subset, checked by max-flow rather than by cut coverage.
Cost flow_brute_force(const SrapInstance& inst) {
  int count = static_cast<int>(inst.links().size());
  std::optional<Cost> best;
  for_each_subset(count, [&](const std::vector<int>& s) {
    Cost c = links_cost(inst.links(), s);
    if ((!best || c < *best) && verify_solution(inst, s)) best = c;
  });
  return best.value_or(-1);
}

TEST(Oracle, FrozenOptima) {
  const std::vector<Cost> frozen = {34, 8, 3, 18, 28, 25, 26, 16};
  std::vector<Cost> oracle, flow;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    SrapInstance inst = generate_srap(seed, {});
    oracle.push_back(*exact_srap(inst).cost);
    flow.push_back(flow_brute_force(inst));
  }
  EXPECT_EQ(oracle, frozen);
  EXPECT_EQ(flow, frozen);
}

TEST(Oracle, ScapAndSag) {
  ScapInstance s{5, {0, 1, 2, 3, 4}, two_triangles(), dense_links(5), 2};
  ExactResult r = exact_scap(s);
  ASSERT_TRUE(r.cost.has_value());
  EXPECT_TRUE(verify_scap_solution(s, r.links));
  ScapInstance ring{4, {0, 1, 2, 3}, cycle_edges({0, 1, 2, 3}), {{1, 3, 1}, {0, 2, 1}}, 2};
  EXPECT_EQ(exact_scap(ring).cost, exact_srap(r4()).cost);
  ScapInstance empty = ring;
  empty.links.clear();
  EXPECT_FALSE(exact_scap(empty).cost.has_value());
}

// reduction

TEST(Reduction, NormalizePendantPath) {
  ScapInstance s{5, {0, 1, 2}, cycle_edges({0, 1, 2}), {{3, 1, 1}, {4, 2, 1}, {0, 1, 1}}, 2};
  s.edges.push_back({0, 3});
  s.edges.push_back({3, 4});
  NormalizedScap n = normalize_scap(s);
  EXPECT_EQ(n.core_size, 3);
  EXPECT_EQ(n.vertex_map[3], n.vertex_map[0]);
  EXPECT_EQ(n.vertex_map[4], n.vertex_map[0]);
}

TEST(Reduction, NormalizeSteinerTriangles) {
  ScapInstance s{9, {0, 1, 2}, cycle_edges({0, 1, 2}), {{3, 0, 1}, {6, 1, 1}}, 2};
  for (auto e : cycle_edges({3, 4, 5})) s.edges.push_back(e);
  for (auto e : cycle_edges({6, 7, 8})) s.edges.push_back(e);
  NormalizedScap n = normalize_scap(s);
  EXPECT_EQ(n.core_size, 3);
  EXPECT_EQ(n.vertex_map[3], n.vertex_map[5]);
  EXPECT_EQ(n.vertex_map[6], n.vertex_map[8]);
  EXPECT_NE(n.vertex_map[3], n.vertex_map[6]);
  EXPECT_EQ(n.inst.vertex_count, 5);
}

TEST(Reduction, NormalizeIsIdentityOnCore) {
  ScapInstance s{4, {0, 1, 2, 3}, cycle_edges({0, 1, 2, 3}), {{1, 3, 1}, {0, 2, 1}}, 2};
  NormalizedScap n = normalize_scap(s);
  EXPECT_EQ(n.vertex_map, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(n.inst.links.size(), 2u);
}

TEST(Reduction, CactusOfCycle) {
  Cactus c = cactus_of_mincuts({5, cycle_edges({0, 1, 2, 3, 4})}, 2);
  EXPECT_EQ(c.node_count, 5);
  ASSERT_EQ(c.cycles.size(), 1u);
  EXPECT_EQ(c.cycles[0].size(), 5u);
  Unfolding u = unfold_cactus(c, c.node_of[0]);
  EXPECT_EQ(u.sequence.size(), 5u);
  EXPECT_TRUE(u.zero_links.empty());
}

TEST(Reduction, CactusOfTwoTriangles) {
  Cactus c = cactus_of_mincuts({5, two_triangles()}, 2);
  EXPECT_EQ(c.node_count, 5);
  EXPECT_EQ(c.cycles.size(), 2u);
  Unfolding u = unfold_cactus(c, c.node_of[1]);
  EXPECT_EQ(u.sequence.size(), 6u);
  EXPECT_EQ(u.zero_links.size(), 1u);
}

TEST(Reduction, K4) {
  EXPECT_THROW(cactus_of_mincuts({4, k4()}, 2), InfeasibleError);
  Cactus c = cactus_of_mincuts({4, k4()}, 3);
  EXPECT_EQ(c.node_count, 5);
  EXPECT_EQ(c.cycles.size(), 4u);
  ScapInstance s{4, {0, 1, 2, 3}, k4(), dense_links(4), 2};
  EXPECT_THROW(reduce_scap(s), InfeasibleError);
}

TEST(Reduction, ScapRingIsIdentity) {
  ScapInstance s{4, {0, 1, 2, 3}, cycle_edges({0, 1, 2, 3}), {{1, 3, 1}, {0, 2, 1}}, 2};
  Reduction r = reduce_scap(s);
  EXPECT_EQ(r.instance.ring_size(), 4);
  EXPECT_EQ(r.instance.links().size(), 2u);
  ExactResult red = exact_srap(r.instance);
  EXPECT_EQ(red.cost, 2);
  EXPECT_EQ(lift_solution(s, r.lift, red.links), (std::vector<int>{0, 1}));
}

TEST(Reduction, ScapTwoTriangles) {
  ScapInstance s{5, {0, 1, 2, 3, 4}, two_triangles(), dense_links(5), 2};
  Reduction r = reduce_scap(s);
  EXPECT_EQ(r.instance.ring_size(), 6);
  ExactResult red = exact_srap(r.instance);
  EXPECT_EQ(red.cost, exact_scap(s).cost);
  std::vector<int> lifted = lift_solution(s, r.lift, red.links);
  EXPECT_TRUE(verify_scap_solution(s, lifted));
}

TEST(Reduction, SagFixtures) {
  SagInstance c4{2, 4, 0, cycle_edges({0, 1, 2, 3}), dense_links(4)};
  Reduction a = reduce_sag(c4);
  EXPECT_EQ(a.instance.ring_size(), 4);
  EXPECT_TRUE(a.instance.all_terminals());
  EXPECT_EQ(exact_srap(a.instance).cost, exact_sag(c4).cost);

  SagInstance eights{2, 7, 0, cycle_edges({0, 1, 2, 3}), dense_links(7)};
  for (auto e : cycle_edges({0, 4, 5, 6})) eights.edges.push_back(e);
  Reduction b = reduce_sag(eights);
  EXPECT_EQ(b.instance.ring_size(), 8);
  EXPECT_EQ(b.unfolding.zero_links.size(), 1u);

  SagInstance k4s{3, 4, 0, k4(), dense_links(4)};
  Reduction c = reduce_sag(k4s);
  ExactResult red = exact_srap(c.instance);
  EXPECT_EQ(red.cost, exact_sag(k4s).cost);
  EXPECT_TRUE(verify_sag_solution(k4s, lift_solution(k4s, c.lift, red.links)));
}

TEST(Reduction, WrongConnectivityRejected) {
  SagInstance already{2, 4, 0, k4(), dense_links(4)};
  EXPECT_THROW(reduce_sag(already), InfeasibleError);
  ScapInstance path{3, {0, 2}, {{0, 1}, {1, 2}}, dense_links(3), 2};
  EXPECT_THROW(reduce_scap(path), InfeasibleError);
}

// io

TEST(Io, SrapRoundTrip) {
  SrapInstance inst = generate_srap(11, {});
  std::string text = serialize(inst);
  SrapInstance back = parse_string(text, parse_srap);
  EXPECT_EQ(serialize(back), text);
}

TEST(Io, ScapSagLiftRoundTrip) {
  ScapInstance s = generate_scap(5, {});
  EXPECT_EQ(serialize(parse_string(serialize(s), parse_scap)), serialize(s));
  SagInstance g = generate_sag(5, {});
  EXPECT_EQ(serialize(parse_string(serialize(g), parse_sag)), serialize(g));
  LiftData lift = reduce_sag(g).lift;
  EXPECT_EQ(serialize(parse_string(serialize(lift), parse_lift)), serialize(lift));
}

TEST(Io, UnknownDirectiveHasLine) {
  try {
    parse_string("srap 1\nring 4\nwibble 3\n", parse_srap);
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
  }
  EXPECT_THROW(parse_string("scap 1\n", parse_srap), ParseError);
}

TEST(Io, Solutions) {
  SrapInstance inst = r4();
  std::string text = serialize_solution(inst.links(), {0, 1});
  Solution sol = parse_string(text, parse_solution);
  EXPECT_EQ(sol.cost, 2);
  EXPECT_EQ(resolve_solution(inst.links(), sol), (std::vector<int>{0, 1}));
  sol.cost = 3;
  EXPECT_THROW(resolve_solution(inst.links(), sol), Error);
  sol.cost.reset();
  sol.links.push_back({1, 2});
  EXPECT_THROW(resolve_solution(inst.links(), sol), Error);
}

// generator

TEST(Generator, Deterministic) {
  SrapGenOptions o{8, 3, 12, 10, false};
  EXPECT_EQ(serialize(generate_srap(7, o)), serialize(generate_srap(7, o)));
  EXPECT_NE(fnv1a(serialize(generate_srap(7, o))), fnv1a(serialize(generate_srap(8, o))));
}

TEST(Generator, AlwaysFeasible) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    EXPECT_TRUE(exact_srap(generate_srap(seed, {8, 3, 12, 10, seed % 2 == 0})).cost.has_value());
    ScapInstance s = generate_scap(seed, {});
    EXPECT_TRUE(exact_scap(s).cost.has_value());
    SagGenOptions g;
    g.k = seed % 2 ? 2 : 3;
    g.h = 5;
    EXPECT_TRUE(exact_sag(generate_sag(seed, g)).cost.has_value());
  }
}

// command line

namespace {

std::filesystem::path scratch() {
  auto p = std::filesystem::temp_directory_path() / ("srap_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(p);
  return p;
}

struct CliRun {
  int status = 0;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(SRAP_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error("cannot run the command line tool");
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, SolveR4) {
  auto dir = scratch();
  write_file(dir / "r4.srap", serialize(r4()));
  write_file(dir / "r4s.srap", serialize(r4s()));
  CliRun g = cli("solve --algo greedy --epsilon 2 -i " + (dir / "r4.srap").string());
  EXPECT_EQ(g.status, 0) << g.out;
  EXPECT_NE(g.out.find("\ncost 2\n"), std::string::npos) << g.out;
  EXPECT_NE(g.out.find("\nverified true\n"), std::string::npos);
  CliRun l = cli("solve --algo local -i " + (dir / "r4s.srap").string());
  EXPECT_EQ(l.status, 1) << l.out;
  CliRun e = cli("solve --algo exact --oracle-budget 1 -i " + (dir / "r4.srap").string());
  EXPECT_EQ(e.status, 1) << e.out;
  CliRun ok = cli("solve --algo exact -i " + (dir / "r4.srap").string() + " -o " + (dir / "r4.sol").string());
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_EQ(parse_string(read_file(dir / "r4.sol"), parse_solution).cost, 2);
}

TEST(Cli, ReduceAndLift) {
  auto dir = scratch();
  SagInstance s{2, 5, 0, two_triangles(), dense_links(5)};
  write_file(dir / "tt.sag", serialize(s));
  CliRun r = cli("reduce -i " + (dir / "tt.sag").string() + " -o " + (dir / "tt.srap").string() + " --lift " +
              (dir / "tt.lift").string());
  ASSERT_EQ(r.status, 0) << r.out;
  SrapInstance ring = parse_string(read_file(dir / "tt.srap"), parse_srap);
  EXPECT_EQ(ring.ring_size(), 6);
  CliRun solve = cli("solve --algo exact -i " + (dir / "tt.srap").string() + " -o " + (dir / "tt.sol").string());
  ASSERT_EQ(solve.status, 0) << solve.out;
  CliRun lift = cli("lift -i " + (dir / "tt.sag").string() + " --reduced " + (dir / "tt.srap").string() + " --lift " +
                 (dir / "tt.lift").string() + " --solution " + (dir / "tt.sol").string() + " -o " +
                 (dir / "tt.out").string());
  ASSERT_EQ(lift.status, 0) << lift.out;
  Solution lifted = parse_string(read_file(dir / "tt.out"), parse_solution);
  EXPECT_EQ(lifted.cost, exact_sag(s).cost);

  write_file(dir / "k4.scap", serialize(ScapInstance{4, {0, 1, 2, 3}, k4(), dense_links(4), 2}));
  EXPECT_EQ(cli("reduce -i " + (dir / "k4.scap").string()).status, 2);
}

TEST(Cli, GenIsReproducible) {
  auto dir = scratch();
  std::string args = "gen --type srap --n 8 --m 3 --links 12 --seed 7 -o ";
  ASSERT_EQ(cli(args + (dir / "a.srap").string()).status, 0);
  ASSERT_EQ(cli(args + (dir / "b.srap").string()).status, 0);
  EXPECT_EQ(read_file(dir / "a.srap"), read_file(dir / "b.srap"));
  ASSERT_EQ(cli("gen --type srap --n 8 --m 3 --links 12 --seed 8 -o " + (dir / "c.srap").string()).status, 0);
  EXPECT_NE(read_file(dir / "a.srap"), read_file(dir / "c.srap"));
}

TEST(Cli, Bench) {
  auto dir = scratch() / "bench";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  CliRun empty = cli("bench --dir " + dir.string());
  EXPECT_EQ(empty.status, 0) << empty.out;
  EXPECT_EQ(empty.out.find("\nsummary"), std::string::npos);
  for (int s = 1; s <= 3; ++s) write_file(dir / ("i" + std::to_string(s) + ".srap"), serialize(generate_srap(s, {6, 1, 9, 5, false})));
  CliRun a = cli("bench --dir " + dir.string());
  CliRun b = cli("bench --dir " + dir.string());
  EXPECT_EQ(a.status, 0) << a.out;
  EXPECT_NE(a.out.find("summary greedy count 3"), std::string::npos) << a.out;
  auto strip_times = [](const std::string& t) {
    std::istringstream in(t);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(' ')) + "\n";
    return out;
  };
  EXPECT_EQ(strip_times(a.out), strip_times(b.out));
}
