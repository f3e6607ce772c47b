#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "srap/srap.hpp"

namespace fs = std::filesystem;
using namespace srap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string first_word(const std::string& text) {
  std::istringstream in(text);
  std::string line, word;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    if (ls >> word) return word;
  }
  return "";
}

std::string hex_digest(const std::string& text) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << fnv1a(text);
  return out.str();
}

std::string vertex_set(const std::vector<int>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "}";
}

std::string ratio_text(const Ratio& r) {
  return r.infinite() ? "inf" : std::to_string(r.num) + "/" + std::to_string(r.den);
}

struct SolveConfig {
  std::string algo = "greedy";
  double epsilon = 2;
  int gamma_cap = 4;
  int alpha = 0;
  int oracle_budget = 20;
  std::uint64_t seed = 0;
  std::string input, output, log;
};

SolveOptions options_of(const SolveConfig& c) {
  SolveOptions o;
  o.epsilon = c.epsilon;
  o.gamma_cap = c.gamma_cap;
  if (c.alpha > 0) o.alpha_override = c.alpha;
  o.budget.max_links = c.oracle_budget;
  return o;
}

SolveResult run_algorithm(const SrapInstance& inst, const SolveConfig& c) {
  if (c.algo == "greedy") return relative_greedy(inst, options_of(c));
  if (c.algo == "local") return local_search(inst, options_of(c));
  if (c.algo == "exact") {
    OracleBudget b;
    b.max_links = c.oracle_budget;
    ExactResult r = exact_srap(inst, b);
    if (!r.cost) throw InfeasibleError("instance is infeasible");
    SolveResult res;
    res.links = r.links;
    res.cost = *r.cost;
    return res;
  }
  throw Error("unknown algorithm '" + c.algo + "'");
}

std::string report(const SrapInstance& inst, const std::string& text, const SolveConfig& c, const SolveResult& r,
                   bool verified, double ms) {
  std::ostringstream out;
  out << "algorithm " << c.algo << "\nepsilon " << c.epsilon << "\n";
  if (c.algo != "exact") {
    out << "gamma " << r.gamma << "\ngamma_theory " << r.gamma_theory << "\nalpha " << r.alpha << "\nalpha_theory "
        << r.alpha_theory << "\ninitial_cost " << r.initial_cost << "\ndirected_cost " << r.directed_cost << "\n";
  }
  out << "gamma_cap " << c.gamma_cap << "\noracle_budget " << c.oracle_budget << "\nseed " << c.seed << "\ndigest " << hex_digest(text)
      << "\ncost " << r.cost << "\nverified " << (verified ? "true" : "false") << "\nlinks " << r.links.size() << "\n";
  for (int id : r.links) out << "link " << inst.links()[id].u << ' ' << inst.links()[id].v << "\n";
  out << "time_ms " << std::fixed << std::setprecision(3) << ms << "\n# iterations\n";
  for (const IterationRecord& it : r.log) {
    out << "iteration " << it.index << " chosen";
    for (const auto& vs : it.chosen) out << ' ' << vertex_set(vs);
    out << " cost " << it.chosen_cost << " dropped " << it.dropped_cost;
    if (c.algo == "greedy")
      out << " ratio " << ratio_text(it.ratio) << " fallback " << (it.fallback ? "true" : "false") << " remaining "
          << it.remaining;
    else
      out << " potential " << std::setprecision(1) << static_cast<double>(it.potential);
    out << "\n";
  }
  return out.str();
}

int cmd_solve(const SolveConfig& c) {
  std::string text = read_file(c.input);
  SrapInstance inst = parse_string(text, parse_srap);
  auto t0 = std::chrono::steady_clock::now();
  SolveResult r = run_algorithm(inst, c);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  bool verified = verify_solution(inst, r.links);
  std::string rep = report(inst, text, c, r, verified, ms);
  write_output(c.log, rep);
  if (!c.output.empty()) write_output(c.output, serialize_solution(inst.links(), r.links));
  return verified ? kExitOk : kExitError;
}

int cmd_reduce(const std::string& input, const std::string& output, const std::string& lift_path) {
  std::string text = read_file(input);
  std::string kind = first_word(text);
  Reduction r;
  if (kind == "scap") r = reduce_scap(parse_string(text, parse_scap));
  else if (kind == "sag") r = reduce_sag(parse_string(text, parse_sag));
  else throw Error("expected a scap or sag file");
  write_output(output, serialize(r.instance));
  if (!lift_path.empty()) write_output(lift_path, serialize(r.lift));
  return kExitOk;
}

int cmd_lift(const std::string& original, const std::string& reduced, const std::string& lift_path,
             const std::string& solution, const std::string& output) {
  std::string text = read_file(original);
  SrapInstance red = parse_string(read_file(reduced), parse_srap);
  LiftData lift = parse_string(read_file(lift_path), parse_lift);
  if (lift.origin.size() != red.links().size()) throw Error("lift data does not match the reduced instance");
  std::vector<int> chosen = resolve_solution(red.links(), parse_string(read_file(solution), parse_solution));
  std::string kind = first_word(text);
  if (kind == "scap") {
    ScapInstance s = parse_string(text, parse_scap);
    write_output(output, serialize_solution(s.links, lift_solution(s, lift, chosen)));
  } else if (kind == "sag") {
    SagInstance s = parse_string(text, parse_sag);
    write_output(output, serialize_solution(s.links, lift_solution(s, lift, chosen)));
  } else {
    throw Error("expected a scap or sag file");
  }
  return kExitOk;
}

struct GenConfig {
  std::string type = "srap";
  int n = 8, m = 2, links = 12, k = 2, h = 6, extra = 1, pendant = 1, components = 1;
  long long max_cost = 10;
  std::uint64_t seed = 1;
  bool all_terminals = false;
  std::string output;
};

int cmd_gen(const GenConfig& g) {
  std::string text;
  if (g.type == "srap") {
    text = serialize(generate_srap(g.seed, {g.n, g.m, g.links, g.max_cost, g.all_terminals}));
  } else if (g.type == "scap") {
    text = serialize(generate_scap(g.seed, {g.n, g.pendant, g.components, g.links, g.max_cost}));
  } else if (g.type == "sag") {
    text = serialize(generate_sag(g.seed, {g.k, g.h, g.extra, g.links, g.max_cost}));
  } else {
    throw Error("unknown instance type '" + g.type + "'");
  }
  write_output(g.output, text);
  return kExitOk;
}

int cmd_bench(const std::string& dir, const SolveConfig& base, const std::string& output) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".srap") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::ostringstream out;
  out << "# instance algorithm cost opt ratio time_ms\n";
  struct Stats {
    int count = 0;
    double max_ratio = 0, sum_ratio = 0;
  };
  std::map<std::string, Stats> stats;
  for (const fs::path& p : files) {
    SrapInstance inst = parse_string(read_file(p.string()), parse_srap);
    std::optional<Cost> opt;
    if (priced_link_count(inst.links()) <= base.oracle_budget) {
      OracleBudget b;
      b.max_links = base.oracle_budget;
      opt = exact_srap(inst, b).cost;
    }
    for (std::string algo : {"greedy", "local"}) {
      if (algo == "local" && !inst.all_terminals()) continue;
      SolveConfig c = base;
      c.algo = algo;
      auto t0 = std::chrono::steady_clock::now();
      SolveResult r = run_algorithm(inst, c);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out << p.filename().string() << ' ' << algo << ' ' << r.cost << ' ';
      if (opt && (*opt > 0 || r.cost == 0)) {
        double ratio = *opt > 0 ? static_cast<double>(r.cost) / static_cast<double>(*opt) : 1.0;
        Stats& s = stats[algo];
        ++s.count;
        s.sum_ratio += ratio;
        s.max_ratio = std::max(s.max_ratio, ratio);
        out << *opt << ' ' << std::fixed << std::setprecision(4) << ratio;
      } else if (opt) {
        out << *opt << " -";
      } else {
        out << "- -";
      }
      out << ' ' << std::fixed << std::setprecision(3) << ms << '\n';
    }
  }
  out << "# summary\n";
  for (const auto& [algo, s] : stats)
    out << "summary " << algo << " count " << s.count << " max_ratio " << std::fixed << std::setprecision(4)
        << s.max_ratio << " mean_ratio " << (s.count ? s.sum_ratio / s.count : 0.0) << '\n';
  write_output(output, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner ring augmentation solver"};
  app.require_subcommand(1);

  SolveConfig sc;
  auto add_solve_flags = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", sc.epsilon, "approximation slack")->check(CLI::PositiveNumber);
    cmd->add_option("--gamma-cap", sc.gamma_cap, "largest hyper-link size")->check(CLI::Range(2, 64));
    cmd->add_option("--alpha", sc.alpha, "thinness override")->check(CLI::NonNegativeNumber);
    cmd->add_option("--oracle-budget", sc.oracle_budget, "largest priced link count for the exact oracle");
    cmd->add_option("--seed", sc.seed, "recorded in the report; the solvers are deterministic");
  };
  auto* solve = app.add_subcommand("solve", "solve a ring instance");
  solve->add_option("--algo", sc.algo, "greedy, local or exact")->check(CLI::IsMember({"greedy", "local", "exact"}));
  add_solve_flags(solve);
  solve->add_option("-i,--input", sc.input, "instance file")->required();
  solve->add_option("-o,--output", sc.output, "solution file");
  solve->add_option("--log", sc.log, "report file (default: stdout)");

  std::string red_in, red_out = "-", red_lift;
  auto* reduce = app.add_subcommand("reduce", "reduce a scap or sag instance to a ring instance");
  reduce->add_option("-i,--input", red_in, "scap or sag file")->required();
  reduce->add_option("-o,--output", red_out, "ring instance file");
  reduce->add_option("--lift", red_lift, "lift data file");

  std::string lift_orig, lift_red, lift_data, lift_sol, lift_out = "-";
  auto* lift = app.add_subcommand("lift", "map a reduced solution back to the original instance");
  lift->add_option("-i,--input", lift_orig, "original scap or sag file")->required();
  lift->add_option("--reduced", lift_red, "reduced ring instance")->required();
  lift->add_option("--lift", lift_data, "lift data file")->required();
  lift->add_option("--solution", lift_sol, "solution of the reduced instance")->required();
  lift->add_option("-o,--output", lift_out, "lifted solution file");

  GenConfig gc;
  auto* gen = app.add_subcommand("gen", "generate a feasible random instance");
  gen->add_option("--type", gc.type, "srap, scap or sag")->check(CLI::IsMember({"srap", "scap", "sag"}));
  gen->add_option("--n", gc.n, "ring size, or core size for scap");
  gen->add_option("--m", gc.m, "outside vertices");
  gen->add_option("--links", gc.links, "target link count");
  gen->add_option("--k", gc.k, "connectivity of H for sag");
  gen->add_option("--h-vertices", gc.h, "vertices of H for sag");
  gen->add_option("--extra", gc.extra, "extra vertices for sag");
  gen->add_option("--pendant", gc.pendant, "pendant Steiner vertices for scap");
  gen->add_option("--components", gc.components, "Steiner components for scap");
  gen->add_option("--max-cost", gc.max_cost, "largest link cost");
  gen->add_flag("--all-terminals", gc.all_terminals, "every ring vertex is a terminal");
  gen->add_option("--seed", gc.seed, "random seed");
  gen->add_option("-o,--output", gc.output, "output file");

  std::string bench_dir, bench_out = "-";
  auto* bench = app.add_subcommand("bench", "run the solvers over a directory of ring instances");
  bench->add_option("--dir", bench_dir, "directory of .srap files")->required();
  add_solve_flags(bench);
  bench->add_option("-o,--output", bench_out, "table file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }
  try {
    if (*solve) return cmd_solve(sc);
    if (*reduce) return cmd_reduce(red_in, red_out, red_lift);
    if (*lift) return cmd_lift(lift_orig, lift_red, lift_data, lift_sol, lift_out);
    if (*gen) return cmd_gen(gc);
    if (*bench) return cmd_bench(bench_dir, sc, bench_out);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
