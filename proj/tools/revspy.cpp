/*
 * Copyright 2026 The revspy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// revspy: solve, sigma, simulate, verify-85 and selftest.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "revspy/acceptance.hpp"
#include "revspy/certify.hpp"
#include "revspy/errors.hpp"
#include "revspy/solver.hpp"
#include "revspy/strategies.hpp"

namespace {

using namespace revspy;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitRevWin = 10;
constexpr int kExitFail = 20;

struct Game {
  std::string arena;
  std::uint32_t r = 0, s = 0, k = 2;
  std::uint64_t budget = 0;
};

SolveOptions solve_options(const Game& g) {
  SolveOptions o;
  if (g.budget != 0) o.budget = g.budget;
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

int run_solve(const Game& g) {
  const auto arena = make_arena(g.arena);
  auto table = solve(arena, g.r, g.s, g.k, solve_options(g));
  const bool revs = table->rev_wins();
  std::cout << "winner=" << (revs ? "revolutionaries" : "spies")
            << " states=" << table->stats().states << '\n';
  return revs ? kExitRevWin : kExitOk;
}

int run_sigma(const Game& g) {
  const auto arena = make_arena(g.arena);
  const auto result = sigma(arena, g.r, g.k, solve_options(g));
  const std::string bracket =
      "bracket=[" + std::to_string(result.bracket.lo) + "," + std::to_string(result.bracket.hi) + "]";
  if (result.exact()) {
    std::cout << "sigma=" << result.value() << ' ' << bracket << '\n';
    return kExitOk;
  }
  std::cout << "sigma=[" << result.lo << "," << result.hi << "] " << bracket
            << " incomplete: " << result.note << '\n';
  return kExitResource;
}

struct SimulateArgs {
  std::string rev, spy, trace;
  std::uint32_t rounds = kDefaultMaxRounds;
  std::uint64_t seed = 0;
};

int run_simulate(const Game& g, const SimulateArgs& a) {
  const auto arena = make_arena(g.arena);
  auto rev = make_policy(a.rev, arena, Team::Rev, g.r, g.s, g.k);
  auto spy = make_policy(a.spy, arena, Team::Spy, g.r, g.s, g.k);
  MatchConfig config;
  config.r = g.r;
  config.s = g.s;
  config.k = g.k;
  config.max_rounds = a.rounds;
  config.seed = a.seed;
  config.record_entries = !a.trace.empty();
  const auto trace = play(arena, config, *rev, *spy);
  if (!a.trace.empty()) write_file(a.trace, format_trace(trace, arena));
  std::cout << "outcome=" << format_outcome(trace.outcome, arena) << '\n';
  return trace.outcome.kind == OutcomeKind::RevWin ? kExitRevWin : kExitOk;
}

struct VerifyArgs {
  std::string node, report, tree;
  std::vector<std::string> mutations;
  unsigned threads = 1;
};

int run_verify(const VerifyArgs& a) {
  auto tree = a.tree.empty() ? certify::ProofTree::builtin() : certify::ProofTree::load(a.tree);
  for (const auto& m : a.mutations) certify::apply_mutation(tree, m);
  certify::VerifyOptions options;
  options.threads = a.threads;
  certify::TreeReport report;
  if (a.node.empty()) {
    report = certify::verify_tree(tree, options);
  } else {
    report.nodes.push_back(certify::verify_node(tree, tree.node(a.node), options));
  }
  const auto text = report.text();
  std::cout << text;
  if (!a.report.empty()) write_file(a.report, text);
  return report.pass() ? kExitOk : kExitFail;
}

struct SelftestArgs {
  unsigned threads = 1;
  std::string tree;
  std::uint64_t budget = 0;
  std::vector<int> only;
};

int run_selftest(const SelftestArgs& a) {
  AcceptanceOptions options;
  options.threads = a.threads;
  options.budget = a.budget;
  if (!a.tree.empty()) options.tree_path = a.tree;
  bool failed = false;
  auto print = [&](const CriterionResult& r) {
    failed = failed || r.status == CriterionStatus::Fail;
    std::cout << r.line() << std::endl;
  };
  if (a.only.empty()) {
    run_acceptance(options, print);
  } else {
    for (int id : a.only) print(run_criterion(id, options));
  }
  return failed ? kExitFail : kExitOk;
}

void add_game_flags(CLI::App* app, Game& g, bool with_s) {
  app->add_option("--arena", g.arena, "arena spec, e.g. path:4 or box:2:-11:11")->required();
  app->add_option("--r", g.r, "number of revolutionaries")->required();
  if (with_s) app->add_option("--s", g.s, "number of spies")->required();
  app->add_option("--k", g.k, "meeting size")->required();
  app->add_option("--budget", g.budget, "solver state budget (default REVSPY_BUDGET or built-in)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revolutionaries and spies: solver, strategies and certificates"};
  app.require_subcommand(1);

  Game game;
  SimulateArgs sim;
  VerifyArgs verify;
  SelftestArgs self;

  auto* solve_cmd = app.add_subcommand("solve", "decide G(arena, r, s, k)");
  add_game_flags(solve_cmd, game, true);
  auto* sigma_cmd = app.add_subcommand("sigma", "compute sigma(arena, r, k)");
  add_game_flags(sigma_cmd, game, false);

  auto* sim_cmd = app.add_subcommand("simulate", "play two strategies against each other");
  add_game_flags(sim_cmd, game, true);
  sim_cmd->add_option("--rev", sim.rev, "revolutionary strategy name[:args]")->required();
  sim_cmd->add_option("--spy", sim.spy, "spy strategy name[:args]")->required();
  sim_cmd->add_option("--rounds", sim.rounds, "round limit");
  sim_cmd->add_option("--seed", sim.seed, "random seed");
  sim_cmd->add_option("--trace", sim.trace, "write the move trace here");

  auto* verify_cmd = app.add_subcommand("verify-85", "verify the 8-revolutionary proof tree");
  verify_cmd->add_option("--node", verify.node, "verify a single node");
  verify_cmd->add_option("--report", verify.report, "also write the report here");
  verify_cmd->add_option("--mutate", verify.mutations, "apply a mutation before verifying");
  verify_cmd->add_option("--tree", verify.tree, "proof tree file instead of the built-in tree");
  verify_cmd->add_option("--threads", verify.threads, "worker threads")
      ->check(CLI::Range(1u, 256u));

  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  self_cmd->add_option("--threads", self.threads, "worker threads")->check(CLI::Range(1u, 256u));
  self_cmd->add_option("--tree", self.tree, "proof tree file instead of the built-in tree");
  self_cmd->add_option("--budget", self.budget, "solver state budget");
  self_cmd->add_option("--criterion", self.only, "run only these criteria")
      ->check(CLI::Range(1, kCriteria));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(game);
    if (*sigma_cmd) return run_sigma(game);
    if (*sim_cmd) return run_simulate(game, sim);
    if (*verify_cmd) return run_verify(verify);
    if (*self_cmd) return run_selftest(self);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << " (estimate " << e.estimate() << ")\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
