// Command-line surface: generate instances, solve them end to end, replay
// the built-in worked example against its golden trace, and run the exact
// reference solvers.  Exit codes: 0 all requested checks passed, 1 a check
// failed or a runtime error occurred, 2 usage errors.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fwtsp/example1.hpp"
#include "fwtsp/oracles.hpp"
#include "fwtsp/solver.hpp"

namespace {

fwtsp::CostMatrix load_matrix(const std::string& path) {
  if (path == "-") return fwtsp::read_cost_matrix(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return fwtsp::read_cost_matrix(in);
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << bytes;
}

int run_gen(int n, long long lo, long long hi, std::uint64_t seed,
            const std::string& out_path) {
  if (lo > hi) throw std::runtime_error("--lo must not exceed --hi");
  const fwtsp::CostMatrix m = fwtsp::random_instance(n, lo, hi, seed);
  write_output(out_path, fwtsp::write_cost_matrix(m));
  return 0;
}

int run_solve(const std::string& in_path, const fwtsp::SolveConfig& config,
              bool as_json, bool trace, const std::string& out_path) {
  const fwtsp::CostMatrix m = load_matrix(in_path);
  fwtsp::TraceFn sink;
  if (trace) sink = [](const std::string& line) { std::cerr << line << "\n"; };
  const fwtsp::SolveReport report = fwtsp::solve(m, config, sink);
  write_output(out_path, as_json ? fwtsp::report_json_text(report)
                                 : fwtsp::report_text(report));
  return report.ok ? 0 : 1;
}

int run_replay(const fwtsp::GreedyParams& greedy) {
  fwtsp::SolveConfig config;
  config.start_tour = "(1 2 3 4 5 6 7 8)";
  config.greedy = greedy;
  std::string got;
  fwtsp::solve(fwtsp::example1_matrix(), config,
               [&](const std::string& line) { got += line + "\n"; });

  const std::string& want = fwtsp::example1_golden_trace();
  if (got == want) {
    const long lines = static_cast<long>(std::count(want.begin(), want.end(), '\n'));
    std::cout << "PASS  replay matches the golden trace (" << lines << " lines)\n";
    return 0;
  }
  std::istringstream got_in(got), want_in(want);
  std::string got_line, want_line;
  long line = 0;
  while (true) {
    ++line;
    const bool more_got = static_cast<bool>(std::getline(got_in, got_line));
    const bool more_want = static_cast<bool>(std::getline(want_in, want_line));
    if (!more_got && !more_want) break;  // only lengths differ upstream
    if (!more_want || !more_got || got_line != want_line) {
      std::cout << "FAIL  first divergence at line " << line << "\n"
                << "  expected: " << (more_want ? want_line : "<end of trace>") << "\n"
                << "  actual:   " << (more_got ? got_line : "<end of trace>") << "\n";
      return 1;
    }
  }
  std::cout << "FAIL  traces differ\n";
  return 1;
}

int run_oracle(const std::string& in_path, bool assignment, bool tour) {
  const fwtsp::CostMatrix m = load_matrix(in_path);
  const bool chosen = assignment || tour;
  int rc = 0;
  if (assignment || !chosen) {
    if (m.n() <= 10) {
      const fwtsp::OracleReport r = fwtsp::brute_ap(m);
      std::cout << "assignment optimum " << fwtsp::value_to_string(r.optimum)
                << "  " << fwtsp::cycle_notation(r.optimizer) << "\n";
    } else if (assignment) {
      std::cout << "assignment oracle unavailable: n > 10\n";
      rc = 1;
    } else {
      std::cout << "assignment oracle skipped: n > 10\n";
    }
  }
  if (tour || !chosen) {
    if (m.n() <= 15) {
      const fwtsp::OracleReport r = fwtsp::held_karp_tsp(m);
      std::cout << "tour optimum " << fwtsp::value_to_string(r.optimum) << "  "
                << fwtsp::cycle_notation(r.optimizer) << "\n";
    } else if (tour) {
      std::cout << "tour oracle unavailable: n > 15\n";
      rc = 1;
    } else {
      std::cout << "tour oracle skipped: n > 15\n";
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-phase assignment-to-tour solver"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  int gen_n = 8;
  long long gen_lo = 1, gen_hi = 100;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of vertices")->required()->check(CLI::Range(3, 10000));
  gen->add_option("--lo", gen_lo, "minimum arc cost (default 1)");
  gen->add_option("--hi", gen_hi, "maximum arc cost (default 100)");
  gen->add_option("--seed", gen_seed, "generator seed (default 1)");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run phases 1-3 on an instance");
  std::string solve_in, solve_out;
  fwtsp::SolveConfig config;
  bool as_json = false, trace = false;
  solve_cmd->add_option("instance", solve_in, "instance file, or - for stdin")->required();
  solve_cmd->add_option("--seed", config.seed, "master seed (default 1)");
  solve_cmd->add_option("--start-tour", config.start_tour,
                        "start tour in cycle notation, e.g. \"(1 2 3 4 5 6 7 8)\"");
  solve_cmd->add_option("--rank-budget", config.greedy.rank_budget,
                        "greedy trials per start vertex (0 = floor(log2 n) + 1)");
  solve_cmd->add_option("--start-budget", config.greedy.start_budget,
                        "start vertices per greedy round (0 = ceil(log2 n))");
  solve_cmd->add_flag("--sweep-all-starts", config.greedy.sweep_all_starts,
                      "evaluate every negative start and apply the global best");
  solve_cmd->add_option("--node-budget", config.phase3.node_budget,
                        "cycle-tree extension budget (default 1000000)");
  solve_cmd->add_option("--product-cap", config.phase3.product_cap,
                        "max cycles per product (0 = floor(log2 n))");
  solve_cmd->add_option("--restarts", config.phase3.restarts,
                        "greedy reruns when no derived tour exists (-1 = n*floor(log2 n))");
  solve_cmd->add_flag("--narrow-roots", config.phase3.narrow_roots,
                      "restrict tree roots to pooled-cycle vertices (forfeits the proof)");
  solve_cmd->add_option("--time-limit-ms", config.phase3.time_limit_ms,
                        "wall-clock ceiling for the tree (0 = off; breaks determinism)");
  solve_cmd->add_flag("--oracle-check", config.oracle_check,
                      "cross-check against exact solvers when sizes permit");
  solve_cmd->add_flag("--json", as_json, "emit the JSON report instead of text");
  solve_cmd->add_flag("--trace", trace, "stream the full phase trace to stderr");
  solve_cmd->add_option("--out", solve_out, "report path (default stdout)");

  // replay-example1
  auto* replay = app.add_subcommand(
      "replay-example1", "replay the built-in worked example against its golden trace");
  fwtsp::GreedyParams replay_greedy;
  replay->add_option("--rank-budget", replay_greedy.rank_budget,
                     "override greedy trials per start (diverges from the golden trace)");
  replay->add_option("--start-budget", replay_greedy.start_budget,
                     "override start vertices per round");
  replay->add_flag("--sweep-all-starts", replay_greedy.sweep_all_starts,
                   "override the first-start application rule");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "run the exact reference solvers");
  std::string oracle_in;
  bool oracle_ap = false, oracle_tour = false;
  oracle->add_option("instance", oracle_in, "instance file, or - for stdin")->required();
  oracle->add_flag("--assignment", oracle_ap, "assignment optimum only");
  oracle->add_flag("--tour", oracle_tour, "tour optimum only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_n, gen_lo, gen_hi, gen_seed, gen_out);
    if (solve_cmd->parsed()) return run_solve(solve_in, config, as_json, trace, solve_out);
    if (replay->parsed()) return run_replay(replay_greedy);
    if (oracle->parsed()) return run_oracle(oracle_in, oracle_ap, oracle_tour);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
