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


// The acceptance suite. Simulation criteria fan out over a small worker
// pool; results are merged in job order so digests do not depend on the
// thread count.

#include "revspy/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "revspy/certify.hpp"
#include "revspy/errors.hpp"
#include "revspy/solver.hpp"
#include "revspy/strategies.hpp"

namespace revspy {

namespace {

constexpr std::uint32_t kSimRounds = 10'000;
constexpr std::uint64_t kSeeds = 10;
constexpr std::uint64_t kReplicatedSeeds = 50;

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex lock;
  std::exception_ptr first;
  std::size_t first_index = n;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard guard(lock);
          if (i < first_index) {
            first_index = i;
            first = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

class Digest {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ = (h_ ^ ((v >> (8 * i)) & 0xff)) * 0x100000001b3ull;
    }
  }
  void add(std::string_view s) {
    add(s.size());
    for (unsigned char c : s) h_ = (h_ ^ c) * 0x100000001b3ull;
  }
  std::uint64_t value() const { return h_; }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

// ---------------------------------------------------------------- trees

std::vector<std::pair<Vertex, Vertex>> pruefer_edges(const std::vector<Vertex>& seq,
                                                     std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (Vertex v : seq) ++degree[v];
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v : seq) {
    Vertex leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, v);
    --degree[leaf];
    --degree[v];
  }
  Vertex u = 0;
  while (degree[u] != 1) ++u;
  Vertex w = u + 1;
  while (degree[w] != 1) ++w;
  edges.emplace_back(u, w);
  return edges;
}

std::string rooted_code(const std::vector<std::vector<Vertex>>& adj, Vertex v, Vertex parent) {
  std::vector<std::string> parts;
  for (Vertex w : adj[v]) {
    if (w != parent) parts.push_back(rooted_code(adj, w, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (auto& p : parts) out += p;
  return out + ")";
}

std::string canonical_tree(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::string best;
  for (Vertex root = 0; root < n; ++root) {
    auto code = rooted_code(adj, root, static_cast<Vertex>(n));
    if (best.empty() || code < best) best = code;
  }
  return best;
}

// -------------------------------------------------------------- context

struct SigmaKey {
  std::string label;
  std::uint32_t r, k;
  auto operator<=>(const SigmaKey&) const = default;
};

struct CachedSigma {
  SigmaResult result;
  std::size_t vertices = 0;
};

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& options) : options_(options) {}

  CriterionResult run(int id) {
    if (id < 1 || id > kCriteria) throw UsageError("no acceptance criterion " + std::to_string(id));
    CriterionResult out;
    out.id = id;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (id) {
        case 1: acyclic(out); break;
        case 2: sandwich(out); break;
        case 3: cycles(out); break;
        case 4: lipschitz(out); break;
        case 5: order_statistic_games(out, options_.threads); break;
        case 6: composite_games(out, options_.threads); break;
        case 7: certificate(out, options_.threads); break;
        case 8: monotonicity(out); break;
        case 9: combinator_games(out, options_.threads); break;
        case 10: replication(out, options_.threads); break;
        case 11: determinism(out); break;
      }
    } catch (const std::exception& e) {
      out.status = CriterionStatus::Fail;
      out.detail = std::string("error: ") + e.what();
    }
    out.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (id >= 5 && id <= 10) digests_[{id, options_.threads}] = out.digest;
    return out;
  }

 private:
  // ----------------------------------------------------------- solver

  SolveOptions solve_options() const {
    SolveOptions o;
    if (options_.budget != 0) o.budget = options_.budget;
    return o;
  }

  const CachedSigma& sigma_of(const std::string& label, const Arena& arena, std::uint32_t r,
                              std::uint32_t k) {
    SigmaKey key{label, r, k};
    auto it = sigmas_.find(key);
    if (it == sigmas_.end()) {
      it = sigmas_.emplace(key, CachedSigma{sigma(arena, r, k, solve_options()), arena.size()})
               .first;
    }
    return it->second;
  }

  static void set_skip(CriterionResult& out, const std::string& what) {
    out.status = CriterionStatus::Skip;
    out.detail = "solver budget exhausted at " + what;
  }

  void acyclic(CriterionResult& out) {
    out.title = "acyclic sigma formula";
    static constexpr std::size_t kExpected[] = {0, 1, 1, 1, 2, 3, 6};
    std::size_t instances = 0, mismatches = 0, tree_count = 0;
    std::string first_bad, skipped;
    Digest digest;
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto trees = nonisomorphic_trees(n);
      if (trees.size() != kExpected[n]) {
        out.detail = std::to_string(trees.size()) + " trees on " + std::to_string(n) +
                     " vertices, expected " + std::to_string(kExpected[n]);
        return;
      }
      tree_count += trees.size();
      for (std::size_t t = 0; t < trees.size(); ++t) {
        const std::string label = "tree" + std::to_string(n) + "." + std::to_string(t);
        for (std::uint32_t r = 1; r <= 5; ++r) {
          for (std::uint32_t k = 1; k <= 3; ++k) {
            const auto& got = sigma_of(label, trees[t], r, k).result;
            ++instances;
            const std::string where =
                label + " r=" + std::to_string(r) + " k=" + std::to_string(k);
            if (!got.exact()) {
              if (skipped.empty()) skipped = where;
              continue;
            }
            const auto want = std::min<std::uint32_t>(static_cast<std::uint32_t>(n), r / k);
            digest.add(got.value());
            if (got.value() != want) {
              ++mismatches;
              if (first_bad.empty()) {
                first_bad = where + " sigma=" + std::to_string(got.value()) +
                            " formula=" + std::to_string(want);
              }
            }
          }
        }
      }
    }
    out.digest = digest.hex();
    if (mismatches) {
      out.detail = std::to_string(mismatches) + " mismatches, first " + first_bad;
      return;
    }
    if (!skipped.empty()) return set_skip(out, skipped);
    out.status = CriterionStatus::Pass;
    out.detail = std::to_string(instances) + " instances on " + std::to_string(tree_count) +
                 " trees match";
  }

  void cycles(CriterionResult& out) {
    out.title = "cycle spot checks";
    struct Case { std::size_t n; std::uint32_t r, k, want; };
    const Case cases[] = {{3, 2, 2, 1}, {4, 3, 2, 2}, {5, 4, 2, 2}};
    std::ostringstream detail;
    Digest digest;
    bool ok = true;
    for (const auto& c : cases) {
      const auto& got = sigma_of("cycle" + std::to_string(c.n), make_cycle(c.n), c.r, c.k).result;
      const std::string name = "C" + std::to_string(c.n) + "(" + std::to_string(c.r) + "," +
                               std::to_string(c.k) + ")";
      if (!got.exact()) return set_skip(out, name);
      digest.add(got.value());
      detail << name << "=" << got.value() << " ";
      ok = ok && got.value() == c.want;
    }
    out.digest = digest.hex();
    out.detail = detail.str();
    out.detail.pop_back();
    out.status = ok ? CriterionStatus::Pass : CriterionStatus::Fail;
  }

  void monotonicity(CriterionResult& out) {
    out.title = "power and product monotonicity";
    const auto p5 = make_path(5);
    const auto p3 = make_path(3);
    const auto& pow = sigma_of("power2.path5", power(p5, 2), 4, 2).result;
    const auto& base5 = sigma_of("path5", p5, 4, 2).result;
    const auto& prod = sigma_of("product.path3.path3", strong_product(p3, p3), 4, 2).result;
    const auto& base3 = sigma_of("path3", p3, 4, 2).result;
    if (!pow.exact()) return set_skip(out, "power(P5,2)");
    if (!base5.exact()) return set_skip(out, "P5");
    if (!prod.exact()) return set_skip(out, "P3xP3");
    if (!base3.exact()) return set_skip(out, "P3");
    Digest digest;
    for (auto v : {pow.value(), base5.value(), prod.value(), base3.value()}) digest.add(v);
    out.digest = digest.hex();
    out.detail = "sigma(P5^2)=" + std::to_string(pow.value()) + " <= sigma(P5)=" +
                 std::to_string(base5.value()) + ", sigma(P3xP3)=" +
                 std::to_string(prod.value()) + " >= sigma(P3)=" + std::to_string(base3.value());
    out.status = pow.value() <= base5.value() && prod.value() >= base3.value()
                     ? CriterionStatus::Pass
                     : CriterionStatus::Fail;
  }

  void sandwich(CriterionResult& out) {
    out.title = "bracket sandwich";
    // Make sure every solver instance of the suite has been computed.
    CriterionResult scratch;
    if (!solver_done_) {
      acyclic(scratch);
      cycles(scratch);
      monotonicity(scratch);
      solver_done_ = true;
    }
    std::size_t checked = 0, outside = 0;
    std::string first_bad, skipped;
    Digest digest;
    for (const auto& [key, cached] : sigmas_) {
      const auto& s = cached.result;
      const std::string where =
          key.label + " r=" + std::to_string(key.r) + " k=" + std::to_string(key.k);
      if (!s.exact()) {
        if (skipped.empty()) skipped = where;
        continue;
      }
      const auto b = splitting_bounds(cached.vertices, key.r, key.k);
      ++checked;
      digest.add(s.value());
      if (s.value() < b.lo || s.value() > b.hi) {
        ++outside;
        if (first_bad.empty()) {
          first_bad = where + " sigma=" + std::to_string(s.value()) + " outside [" +
                      std::to_string(b.lo) + "," + std::to_string(b.hi) + "]";
        }
      }
    }
    out.digest = digest.hex();
    if (outside) {
      out.detail = std::to_string(outside) + " values outside the bracket, first " + first_bad;
      return;
    }
    if (!skipped.empty()) return set_skip(out, skipped);
    out.status = CriterionStatus::Pass;
    out.detail = std::to_string(checked) + " sigma values inside their brackets";
  }

  // -------------------------------------------------------- Lipschitz

  void lipschitz(CriterionResult& out) {
    out.title = "order statistics are 1-Lipschitz";
    AgentRng rng(4, 0);
    std::size_t violations = 0;
    Digest digest;
    for (int trial = 0; trial < 100'000; ++trial) {
      const auto len = 1 + rng.below(12);
      std::vector<int> values(len), perturbed(len);
      for (std::size_t i = 0; i < len; ++i) {
        values[i] = static_cast<int>(rng.below(101)) - 50;
        perturbed[i] = values[i] + static_cast<int>(rng.below(3)) - 1;
      }
      const int shift = order_statistic_shift(values, perturbed);
      digest.add(static_cast<std::uint64_t>(shift));
      if (shift > 1) ++violations;
    }
    out.digest = digest.hex();
    out.detail = std::to_string(violations) + " violations in 100000 sequences";
    out.status = violations == 0 ? CriterionStatus::Pass : CriterionStatus::Fail;
  }

  // ------------------------------------------------------ simulations

  struct Job {
    const Arena* arena;
    std::string rev, spy;
    std::uint32_t r, s, k, rounds;
    std::uint64_t seed;
    bool continue_after_win = false;
  };

  struct JobResult {
    Trace trace;  // entries dropped after hashing
    std::uint64_t hash = 0;
  };

  static std::uint64_t trace_hash(const Trace& t, const Arena& arena) {
    Digest d;
    for (const auto& e : t.entries) {
      d.add(e.round);
      d.add(static_cast<std::uint64_t>(e.team == Team::Rev));
      for (Vertex v : e.positions) d.add(v);
    }
    d.add(format_outcome(t.outcome, arena));
    d.add(t.max_unguarded);
    for (const auto& n : t.notes) d.add(n);
    return d.value();
  }

  static std::vector<JobResult> run_jobs(const std::vector<Job>& jobs, unsigned threads) {
    std::vector<JobResult> results(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i) {
      const auto& j = jobs[i];
      auto rev = make_policy(j.rev, *j.arena, Team::Rev, j.r, j.s, j.k);
      auto spy = make_policy(j.spy, *j.arena, Team::Spy, j.r, j.s, j.k);
      MatchConfig config;
      config.r = j.r;
      config.s = j.s;
      config.k = j.k;
      config.max_rounds = j.rounds;
      config.seed = j.seed;
      config.continue_after_win = j.continue_after_win;
      results[i].trace = play(*j.arena, config, *rev, *spy);
      results[i].hash = trace_hash(results[i].trace, *j.arena);
      results[i].trace.entries.clear();
      results[i].trace.entries.shrink_to_fit();
    });
    return results;
  }

  static std::string job_name(const Job& j) {
    return j.rev + " vs " + j.spy + " r=" + std::to_string(j.r) + " s=" + std::to_string(j.s) +
           " k=" + std::to_string(j.k) + " seed=" + std::to_string(j.seed);
  }

  /// Zero unguarded k-meetings (or none larger than `cap`) and no forfeit.
  static void judge_games(CriterionResult& out, const std::vector<Job>& jobs,
                          const std::vector<JobResult>& results,
                          std::optional<std::uint32_t> cap = std::nullopt) {
    Digest digest;
    std::uint32_t worst = 0;
    std::string first_bad;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& t = results[i].trace;
      digest.add(results[i].hash);
      worst = std::max(worst, t.max_unguarded);
      const std::uint32_t limit = cap ? *cap : jobs[i].k - 1;
      const bool bad = t.outcome.kind == OutcomeKind::Forfeit || t.max_unguarded > limit;
      if (bad && first_bad.empty()) {
        first_bad = job_name(jobs[i]) + ": " + format_outcome(t.outcome, *jobs[i].arena) +
                    " max_unguarded=" + std::to_string(t.max_unguarded);
      }
    }
    out.digest = digest.hex();
    if (!first_bad.empty()) {
      out.detail = "first failure " + first_bad;
      return;
    }
    out.status = CriterionStatus::Pass;
    out.detail = std::to_string(jobs.size()) + " games of " + std::to_string(jobs[0].rounds) +
                 " rounds, largest unguarded meeting " + std::to_string(worst);
  }

  void order_statistic_games(CriterionResult& out, unsigned threads) {
    out.title = "order-statistic spies on a path";
    const auto arena = make_arena("path:25");
    std::vector<Job> jobs;
    for (auto [r, k] : {std::pair{4u, 2u}, {6u, 2u}, {6u, 3u}}) {
      for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        jobs.push_back({&arena, "random", "orderstat", r, r / k, k, kSimRounds, seed});
      }
    }
    judge_games(out, jobs, run_jobs(jobs, threads));
  }

  void composite_games(CriterionResult& out, unsigned threads) {
    out.title = "composite spies on the plane";
    const auto arena = make_arena("box:2:-11:11");
    std::vector<Job> jobs;
    for (auto [r, k] : {std::pair{5u, 2u}, {8u, 2u}}) {
      for (const char* rev : {"random", "greedy"}) {
        for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
          jobs.push_back({&arena, rev, "composite", r, r - 2 * k + 2, k, kSimRounds, seed});
        }
      }
    }
    judge_games(out, jobs, run_jobs(jobs, threads));
  }

  void combinator_games(CriterionResult& out, unsigned threads) {
    out.title = "sum of two composite groups";
    const auto arena = make_arena("box:2:-6:6");
    std::vector<Job> jobs;
    for (const char* rev : {"random", "greedy"}) {
      for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        jobs.push_back({&arena, rev, "sum:2,2", 8, 4, 3, kSimRounds, seed, true});
      }
    }
    judge_games(out, jobs, run_jobs(jobs, threads), 2u);
  }

  // ------------------------------------------------------ replication

  void replication(CriterionResult& out, unsigned threads) {
    out.title = "replicated formations";
    const auto arena = make_arena("box:2:-11:71");
    std::vector<Job> jobs;
    for (std::uint64_t seed = 0; seed < kReplicatedSeeds; ++seed) {
      jobs.push_back({&arena, "replicated", "random", 16, 11, 2, 30, seed});
    }
    const auto results = run_jobs(jobs, threads);
    Digest digest;
    std::size_t commits = 0, wins = 0;
    std::string first_bad;
    auto fail = [&](std::size_t i, const std::string& why) {
      if (first_bad.empty()) first_bad = "seed " + std::to_string(jobs[i].seed) + ": " + why;
    };
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& t = results[i].trace;
      digest.add(results[i].hash);
      if (t.outcome.kind == OutcomeKind::RevWin) ++wins;
      if (t.outcome.kind == OutcomeKind::Forfeit) fail(i, format_outcome(t.outcome, arena));
      std::optional<int> box;
      for (const auto& note : t.notes) {
        const auto space = note.find(' ');
        const int round = std::stoi(note.substr(6, space - 6));
        if (auto p = note.find("engage box="); p != std::string::npos) {
          int spies = 0;
          box = 0;
          if (std::sscanf(note.c_str() + p, "engage box=%d spies=%d", &*box, &spies) != 2 ||
              spies > 5) {
            fail(i, note);
          }
        } else if (note.find("no engagement box") != std::string::npos) {
          fail(i, note);
        } else if (auto q = note.find("threats="); q != std::string::npos) {
          ++commits;
          if (!box) {
            fail(i, "commit before engagement");
            continue;
          }
          const certify::Point offset{30 * *box, 0};
          for (const auto& threat : certify::parse_threats(note.substr(q + 8))) {
            const auto rel = threat.vertex - offset;
            if (std::max(std::abs(rel.x), std::abs(rel.y)) > certify::kThreatBox ||
                threat.deadline > certify::kMaxRounds ||
                round + threat.deadline - 1 > certify::kMaxRounds) {
              fail(i, "threat " + certify::to_string(threat) + " in round " +
                          std::to_string(round) + " leaves box " + std::to_string(*box));
            }
          }
        }
      }
      if (!box) fail(i, "no engagement note");
    }
    out.digest = digest.hex();
    if (!first_bad.empty()) {
      out.detail = "first failure " + first_bad;
      return;
    }
    out.status = CriterionStatus::Pass;
    out.detail = std::to_string(jobs.size()) + " seeds engaged a box with at most five spies; " +
                 std::to_string(commits) + " committed threat sets stayed local; " +
                 std::to_string(wins) + " rev wins";
  }

  // ------------------------------------------------------ certificate

  std::optional<certify::ProofTree> load_tree(CriterionResult& out) const {
    try {
      return options_.tree_path ? certify::ProofTree::load(*options_.tree_path)
                                : certify::ProofTree::builtin();
    } catch (const std::exception& e) {
      out.detail = std::string("proof tree does not load: ") + e.what();
      return std::nullopt;
    }
  }

  /// Replays every configuration of every leaf through the bounded search,
  /// with spies free to go anywhere in a box larger than the engagement box.
  static std::pair<std::size_t, std::string> cross_check(const certify::ProofTree& tree,
                                                         unsigned threads, Digest& digest) {
    const auto arena = make_arena("box:2:-14:14");
    auto vertex = [&](certify::Point p) {
      if (p.is_absent()) p = {14, 14};
      return *arena.vertex_at(std::vector<int>{p.x, p.y});
    };
    struct Check {
      const certify::CaseNode* node;
      std::vector<certify::Point> spies;
    };
    std::vector<Check> checks;
    for (const auto& node : tree.nodes()) {
      if (!node.children.empty() || node.kind != certify::NodeKind::Cases) continue;
      std::vector<std::size_t> digit(node.slots.size(), 0);
      while (true) {
        Check c{&node, {}};
        for (std::size_t i = 0; i < digit.size(); ++i) {
          c.spies.push_back(node.slots[i].points()[digit[i]]);
        }
        checks.push_back(std::move(c));
        std::size_t i = digit.size();
        while (i > 0 && ++digit[i - 1] == node.slots[i - 1].points().size()) digit[--i] = 0;
        if (i == 0) break;
      }
    }
    std::vector<std::string> failures(checks.size());
    std::vector<char> verdicts(checks.size(), 0);
    parallel_for(checks.size(), threads, [&](std::size_t i) {
      const auto& c = checks[i];
      const auto revs = c.node->judged_revs();
      const auto verdict = tree.judge(*c.node, c.spies);
      if (verdict.kind != certify::Verdict::Punished) {
        failures[i] = c.node->id + ": configuration is not punished";
        return;
      }
      const auto& threats = c.node->punishments[verdict.index];
      const auto plan = certify::punish(revs, threats);
      std::vector<Vertex> rv, sv;
      for (auto p : revs) rv.push_back(vertex(p));
      for (auto p : c.spies) sv.push_back(vertex(p));
      std::sort(rv.begin(), rv.end());
      std::sort(sv.begin(), sv.end());
      BoundedSearchOptions options;
      options.rev_hint = [&](std::uint32_t depth) -> std::optional<std::vector<Vertex>> {
        if (depth >= plan.size()) return std::nullopt;
        std::vector<Vertex> out;
        for (auto p : plan[depth]) out.push_back(vertex(p));
        return out;
      };
      const auto state = GameState::rev_to_move(arena, rv, sv);
      const bool won =
          bounded_rev_wins(state, 2, static_cast<std::uint32_t>(plan.size()), std::nullopt, options);
      verdicts[i] = won;
      if (!won) {
        std::string where = c.node->id + ":";
        for (auto p : c.spies) where += " " + certify::to_string(p);
        failures[i] = where + " survives " + certify::to_string(threats);
      }
    });
    std::string first;
    for (std::size_t i = 0; i < checks.size(); ++i) {
      digest.add(static_cast<std::uint64_t>(verdicts[i]));
      if (first.empty()) first = failures[i];
    }
    return {checks.size(), first};
  }

  void certificate(CriterionResult& out, unsigned threads) {
    out.title = "proof-tree certificate";
    auto tree = load_tree(out);
    if (!tree) return;
    Digest digest;
    certify::VerifyOptions vo;
    vo.threads = threads;
    const auto report = certify::verify_tree(*tree, vo);
    digest.add(report.text());
    if (!report.pass()) {
      out.digest = digest.hex();
      out.detail = "verification failed: " + report.nodes.back().line();
      for (const auto& n : report.nodes) {
        if (!n.ok()) {
          out.detail = "verification failed at " + n.line() +
                       (n.errors.empty() ? " " + n.first_gap : " " + n.errors.front());
          break;
        }
      }
      return;
    }

    const auto [checks, cross_failure] = cross_check(*tree, threads, digest);
    if (checks < 20 || !cross_failure.empty()) {
      out.digest = digest.hex();
      out.detail = checks < 20 ? "only " + std::to_string(checks) + " leaf cross-checks"
                               : "cross-check failed " + cross_failure;
      return;
    }

    std::vector<std::string> survivors;
    for (const char* mutation : {"shrink-deadline", "widen-b1", "delete-threat"}) {
      auto mutated = *tree;
      certify::apply_mutation(mutated, mutation);
      const auto m = certify::verify_tree(mutated, vo);
      digest.add(m.text());
      if (m.pass()) survivors.push_back(mutation);
    }
    out.digest = digest.hex();
    if (!survivors.empty()) {
      out.detail = "mutation not caught: " + survivors.front();
      return;
    }
    out.status = CriterionStatus::Pass;
    out.detail = "PASS nodes=" + std::to_string(report.nodes.size()) + ", " +
                 std::to_string(checks) + " leaf cross-checks won, 3 mutations caught";
  }

  // ------------------------------------------------------ determinism

  void determinism(CriterionResult& out) {
    out.title = "thread-count determinism";
    const unsigned a = options_.threads;
    const unsigned b = a == 1 ? std::max(2u, std::thread::hardware_concurrency()) : 1;
    std::vector<int> differ;
    Digest digest;
    for (int id = 5; id <= 10; ++id) {
      std::string da, db;
      for (unsigned threads : {a, b}) {
        auto it = digests_.find({id, threads});
        if (it == digests_.end()) {
          AcceptanceOptions o = options_;
          o.threads = threads;
          Suite other(o);
          other.run(id);
          it = digests_.emplace(std::pair{id, threads}, other.digests_.at({id, threads})).first;
        }
        (threads == a ? da : db) = it->second;
      }
      digest.add(da);
      if (da.empty() || da != db) differ.push_back(id);
    }
    out.digest = digest.hex();
    if (!differ.empty()) {
      out.detail = "criterion " + std::to_string(differ.front()) + " differs between " +
                   std::to_string(a) + " and " + std::to_string(b) + " threads";
      return;
    }
    out.status = CriterionStatus::Pass;
    out.detail = "criteria 5-10 identical at " + std::to_string(a) + " and " +
                 std::to_string(b) + " threads";
  }

  AcceptanceOptions options_;
  std::map<SigmaKey, CachedSigma> sigmas_;
  bool solver_done_ = false;
  std::map<std::pair<int, unsigned>, std::string> digests_;
};

}  // namespace

std::string CriterionResult::line() const {
  const char* word = status == CriterionStatus::Pass   ? "PASS"
                     : status == CriterionStatus::Skip ? "SKIP"
                                                       : "FAIL";
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1fs", seconds);
  return "criterion " + std::to_string(id) + " " + word + " " + title + ": " + detail + " (" +
         secs + ")";
}

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result) {
  Suite suite(options);
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriteria; ++id) {
    results.push_back(suite.run(id));
    if (on_result) on_result(results.back());
  }
  return results;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  return Suite(options).run(id);
}

std::vector<Arena> nonisomorphic_trees(std::size_t n) {
  if (n == 0) throw UsageError("a tree needs at least one vertex");
  if (n > 10) throw UsageError("tree enumeration is limited to 10 vertices");
  if (n == 1) return {Arena::from_edges(1, {})};
  if (n == 2) return {Arena::from_edges(2, {{0, 1}})};
  std::map<std::string, std::vector<std::pair<Vertex, Vertex>>> seen;
  std::vector<Vertex> seq(n - 2, 0);
  while (true) {
    auto edges = pruefer_edges(seq, n);
    seen.try_emplace(canonical_tree(n, edges), std::move(edges));
    std::size_t i = seq.size();
    while (i > 0 && ++seq[i - 1] == n) seq[--i] = 0;
    if (i == 0) break;
  }
  std::vector<Arena> out;
  for (const auto& [code, edges] : seen) out.push_back(Arena::from_edges(n, edges));
  return out;
}

int order_statistic_shift(const std::vector<int>& values, const std::vector<int>& perturbed) {
  if (values.size() != perturbed.size()) {
    throw UsageError("order_statistic_shift needs sequences of equal length");
  }
  auto a = values;
  auto b = perturbed;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  int shift = 0;
  for (std::size_t i = 0; i < a.size(); ++i) shift = std::max(shift, std::abs(a[i] - b[i]));
  return shift;
}

}  // namespace revspy
