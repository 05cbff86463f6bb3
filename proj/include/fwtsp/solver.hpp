#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fwtsp/cost_matrix.hpp"
#include "fwtsp/fw_engine.hpp"
#include "fwtsp/greedy.hpp"
#include "fwtsp/oracles.hpp"
#include "fwtsp/permutation.hpp"
#include "fwtsp/random.hpp"
#include "fwtsp/tour_search.hpp"

namespace fwtsp {

struct SolveConfig {
  std::uint64_t seed = 1;
  std::string start_tour;  // cycle notation; empty = drawn from the seed
  GreedyParams greedy;
  Phase3Params phase3;     // its seed is overwritten from the master seed
  bool oracle_check = false;
};

// Cross-checks against the exact reference solvers, size permitting.
struct OracleSection {
  bool requested = false;
  bool assignment_checked = false;
  Value assignment_optimum = 0;
  bool assignment_pass = false;
  bool tour_checked = false;
  Value tour_optimum = 0;
  bool tour_pass = false;
  std::vector<std::string> notices;

  bool pass() const {
    return (!assignment_checked || assignment_pass) && (!tour_checked || tour_pass);
  }
};

struct SolveReport {
  int n = 0;
  SolveConfig config;  // as resolved: start_tour always filled in
  GreedyTrace phase1;
  Phase2Result phase2;
  Phase3Result phase3;
  OracleSection oracle;
  bool ok = true;
};

// Oracle size gates: beyond these the check is skipped with a notice.
inline constexpr int kAssignmentOracleMaxN = 10;
inline constexpr int kTourOracleMaxN = 15;

inline SolveReport solve(const CostMatrix& m, const SolveConfig& config,
                         TraceFn trace = {}) {
  const int n = m.n();
  SolveReport report;
  report.n = n;
  report.config = config;

  SplitMix64 master(config.seed);
  const std::uint64_t tour_seed = master.next();
  const std::uint64_t search_seed = master.next();

  Permutation start;
  if (config.start_tour.empty()) {
    SplitMix64 rng(tour_seed);
    start = random_n_cycle(n, rng);
    report.config.start_tour = cycle_notation(start);
  } else {
    start = parse_cycles(config.start_tour, n);
    if (!is_tour(start))
      throw std::invalid_argument("start tour must be a single cycle through all " +
                                  std::to_string(n) + " vertices");
  }

  report.phase1 = phase1_run(m, start, config.greedy, trace);
  report.phase2 = phase2_run(m, report.phase1, trace);

  Phase3Params params = config.phase3;
  params.seed = search_seed;
  params.greedy = config.greedy;
  report.phase3 = phase3_run(m, report.phase1, report.phase2, params, trace);

  OracleSection& oracle = report.oracle;
  oracle.requested = config.oracle_check;
  if (config.oracle_check) {
    if (n <= kAssignmentOracleMaxN) {
      oracle.assignment_checked = true;
      oracle.assignment_optimum = brute_ap(m).optimum;
      oracle.assignment_pass = report.phase2.cost == oracle.assignment_optimum;
    } else {
      oracle.notices.push_back("assignment oracle skipped: n > " +
                               std::to_string(kAssignmentOracleMaxN));
    }
    if (n <= kTourOracleMaxN) {
      oracle.tour_checked = true;
      oracle.tour_optimum = held_karp_tsp(m).optimum;
      if (report.phase3.certificate == Certificate::OptimalProven) {
        oracle.tour_pass = report.phase3.cost == oracle.tour_optimum;
      } else {
        oracle.tour_pass = report.phase3.cost >= oracle.tour_optimum;
        oracle.notices.push_back(
            "budget exhausted: best " + value_to_string(report.phase3.cost) +
            " vs optimum " + value_to_string(oracle.tour_optimum) + ", excess " +
            value_to_string(report.phase3.cost - oracle.tour_optimum));
      }
    } else {
      oracle.notices.push_back("tour oracle skipped: n > " +
                               std::to_string(kTourOracleMaxN));
    }
  }
  report.ok = oracle.pass();
  return report;
}

namespace detail {

inline std::string product_notation(const std::vector<std::vector<int>>& cycles) {
  std::string out;
  for (const auto& c : cycles) out += cycle_to_string(c);
  return out;
}

}  // namespace detail

inline nlohmann::ordered_json report_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "tour-report-v1";
  j["n"] = r.n;
  j["seed"] = r.config.seed;

  nlohmann::ordered_json config;
  config["start_tour"] = r.config.start_tour;
  config["rank_budget"] = r.config.greedy.rank_budget;
  config["start_budget"] = r.config.greedy.start_budget;
  config["sweep_all_starts"] = r.config.greedy.sweep_all_starts;
  config["node_budget"] = r.config.phase3.node_budget;
  config["product_cap"] = r.config.phase3.product_cap;
  config["restarts"] = r.config.phase3.restarts;
  config["narrow_roots"] = r.config.phase3.narrow_roots;
  config["time_limit_ms"] = r.config.phase3.time_limit_ms;
  config["oracle_check"] = r.config.oracle_check;
  j["config"] = std::move(config);

  const GreedyTrace& t = r.phase1;
  nlohmann::ordered_json phase1;
  phase1["start"] = cycle_notation(t.start);
  phase1["start_cost"] = t.start_cost;
  phase1["rounds"] = t.diff_rounds.size();
  nlohmann::ordered_json applications = nlohmann::ordered_json::array();
  for (const GreedyStep& s : t.steps) {
    nlohmann::ordered_json a;
    a["cycles"] = detail::product_notation(s.cycles);
    a["value"] = s.value;
    a["cost"] = s.cost;
    applications.push_back(std::move(a));
  }
  phase1["applications"] = std::move(applications);
  const Permutation& d_end = t.steps.empty() ? t.start : t.steps.back().result;
  const Value cost_end = t.steps.empty() ? t.start_cost : t.steps.back().cost;
  phase1["result"] = cycle_notation(d_end);
  phase1["cost"] = cost_end;
  phase1["bag"] = t.bag.size();
  j["phase1"] = std::move(phase1);

  nlohmann::ordered_json phase2;
  phase2["assignment"] = cycle_notation(r.phase2.assignment);
  phase2["cost"] = r.phase2.cost;
  phase2["cancellations"] = r.phase2.cancellations;
  phase2["iterations"] = r.phase2.final_state.iterations();
  nlohmann::ordered_json paths = nlohmann::ordered_json::array();
  for (const NegativePath& p : negative_paths(r.phase2.final_state)) {
    nlohmann::ordered_json e;
    e["from"] = p.from;
    e["to"] = p.to;
    e["value"] = p.value;
    e["path"] = p.path;
    paths.push_back(std::move(e));
  }
  phase2["negative_paths"] = std::move(paths);
  j["phase2"] = std::move(phase2);

  const Phase3Result& p3 = r.phase3;
  nlohmann::ordered_json phase3;
  phase3["initial_tour"] = cycle_notation(p3.initial_tour);
  phase3["initial_cost"] = p3.initial_cost;
  phase3["bound_history"] = p3.bound_history;
  phase3["tour"] = cycle_notation(p3.tour);
  phase3["cost"] = p3.cost;
  phase3["gap"] = p3.gap;
  phase3["certificate"] = certificate_name(p3.certificate);
  phase3["pool"] = p3.pool.size();
  phase3["nodes"] = p3.nodes;
  phase3["cap_pruned"] = p3.cap_pruned;
  phase3["tree_complete"] = p3.tree_complete;
  phase3["roots_narrowed"] = p3.roots_narrowed;
  phase3["restarts"] = p3.restarts_used;
  phase3["log"] = p3.history;
  j["phase3"] = std::move(phase3);

  if (r.oracle.requested) {
    nlohmann::ordered_json oracle;
    if (r.oracle.assignment_checked) {
      oracle["assignment_optimum"] = r.oracle.assignment_optimum;
      oracle["assignment_pass"] = r.oracle.assignment_pass;
    }
    if (r.oracle.tour_checked) {
      oracle["tour_optimum"] = r.oracle.tour_optimum;
      oracle["tour_pass"] = r.oracle.tour_pass;
    }
    oracle["notices"] = r.oracle.notices;
    j["oracle"] = std::move(oracle);
  }
  j["ok"] = r.ok;
  return j;
}

inline std::string report_json_text(const SolveReport& r) {
  return report_json(r).dump(2) + "\n";
}

inline std::string report_text(const SolveReport& r) {
  std::string out;
  const auto line = [&](const std::string& tag, const std::string& rest) {
    std::string padded = tag;
    while (padded.size() < 12) padded += ' ';
    out += padded + rest + '\n';
  };

  line("n", std::to_string(r.n));
  line("seed", std::to_string(r.config.seed));
  const GreedyTrace& t = r.phase1;
  line("start", r.config.start_tour + "  cost " + value_to_string(t.start_cost));

  const Permutation& d_end = t.steps.empty() ? t.start : t.steps.back().result;
  const Value cost_end = t.steps.empty() ? t.start_cost : t.steps.back().cost;
  line("phase1", "rounds " + std::to_string(t.diff_rounds.size()) + "  applied " +
                     std::to_string(t.steps.size()) + "  result " +
                     cycle_notation(d_end) + "  cost " + value_to_string(cost_end));
  line("phase2", "assignment " + cycle_notation(r.phase2.assignment) + "  cost " +
                     value_to_string(r.phase2.cost) + "  cancellations " +
                     std::to_string(r.phase2.cancellations) + "  iterations " +
                     std::to_string(r.phase2.final_state.iterations()));

  const Phase3Result& p3 = r.phase3;
  line("phase3", "initial " + cycle_notation(p3.initial_tour) + "  cost " +
                     value_to_string(p3.initial_cost) + "  restarts " +
                     std::to_string(p3.restarts_used));
  std::string bounds;
  for (std::size_t k = 0; k < p3.bound_history.size(); ++k) {
    if (k) bounds += " -> ";
    bounds += value_to_string(p3.bound_history[k]);
  }
  line("bounds", bounds.empty() ? "none" : bounds);
  line("tour", cycle_notation(p3.tour) + "  cost " + value_to_string(p3.cost) +
                   "  gap " + value_to_string(p3.gap));
  line("certificate",
       certificate_name(p3.certificate) + "  pool " + std::to_string(p3.pool.size()) +
           "  nodes " + std::to_string(p3.nodes) + "  cap-pruned " +
           (p3.cap_pruned ? "yes" : "no"));

  if (r.oracle.requested) {
    if (r.oracle.assignment_checked)
      line("oracle", "assignment " + value_to_string(r.oracle.assignment_optimum) +
                         (r.oracle.assignment_pass ? "  PASS" : "  FAIL"));
    if (r.oracle.tour_checked)
      line("oracle", "tour " + value_to_string(r.oracle.tour_optimum) +
                         (r.oracle.tour_pass ? "  PASS" : "  FAIL"));
    for (const std::string& notice : r.oracle.notices) line("oracle", notice);
  }
  line("status", r.ok ? "ok" : "FAIL");
  return out;
}

}  // namespace fwtsp
