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


#include <algorithm>
#include <memory>

#include "doctest.h"
#include "revspy/acceptance.hpp"
#include "revspy/errors.hpp"
#include "revspy/solver.hpp"
#include "revspy/strategies.hpp"

using namespace revspy;

namespace {

Vertex at(const Arena& a, int x, int y) {
  const int c[2] = {x, y};
  return a.vertex_at(c).value();
}

class FixedPolicy : public Policy {
 public:
  explicit FixedPolicy(std::vector<Vertex> spots) : spots_(std::move(spots)) {}
  std::string name() const override { return "fixed"; }
  std::vector<Vertex> place(const GameState&, std::size_t) override { return spots_; }
  JointMove move(const GameState& state) override { return {state.moving_team()}; }

 private:
  std::vector<Vertex> spots_;
};

class ScriptPolicy : public Policy {
 public:
  ScriptPolicy(std::vector<Vertex> spots, std::vector<std::vector<Vertex>> script)
      : spots_(std::move(spots)), script_(std::move(script)) {}
  std::string name() const override { return "script"; }
  std::vector<Vertex> place(const GameState&, std::size_t) override { return spots_; }
  JointMove move(const GameState& state) override {
    if (step_ >= script_.size()) return {state.moving_team()};
    return align_move(*state.arena, state.moving_team(), script_[step_++]);
  }

 private:
  std::vector<Vertex> spots_;
  std::vector<std::vector<Vertex>> script_;
  std::size_t step_ = 0;
};

/// Spies that stand on the first revolutionaries and count move() calls.
class CountingSpies : public Policy {
 public:
  explicit CountingSpies(std::shared_ptr<int> calls) : calls_(std::move(calls)) {}
  std::string name() const override { return "counting"; }
  std::vector<Vertex> place(const GameState& state, std::size_t n) override {
    return std::vector<Vertex>(state.revs.begin(), state.revs.begin() + static_cast<long>(n));
  }
  JointMove move(const GameState& state) override {
    ++*calls_;
    return {state.spies};
  }

 private:
  std::shared_ptr<int> calls_;
};

std::vector<Vertex> placed(Policy& spies, const Arena& a, std::vector<Vertex> revs,
                           std::size_t s) {
  auto state = apply(GameState::initial(a), JointMove{std::move(revs)});
  spies.reset(0);
  return sorted_copy(spies.place(state, s));
}

Trace match(const Arena& a, std::uint32_t r, std::uint32_t s, std::uint32_t k,
            std::uint32_t rounds, std::uint64_t seed, Policy& rev, Policy& spy) {
  MatchConfig c;
  c.r = r;
  c.s = s;
  c.k = k;
  c.max_rounds = rounds;
  c.seed = seed;
  c.continue_after_win = true;
  return play(a, c, rev, spy);
}

std::vector<Vertex> formation(const Arena& a, int ox = 0) {
  std::vector<Vertex> out;
  for (int m : {1, 3}) {
    for (int sx : {-1, 1}) {
      for (int sy : {-1, 1}) out.push_back(at(a, ox + sx * m, sy * m));
    }
  }
  return sorted_copy(out);
}

}  // namespace

TEST_CASE("seed splitting and agent streams") {
  CHECK(split_seed(0, 1) != split_seed(0, 2));
  CHECK(split_seed(1, 1) != split_seed(2, 1));
  AgentRng a(7, 3), b(7, 3), c(7, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.below(1000);
    CHECK(x == b.below(1000));
    CHECK(x < 1000);
    differs = differs || x != c.below(1000);
  }
  CHECK(differs);
}

TEST_CASE("labeled team keeps identities") {
  const auto a = make_path(6);
  LabeledTeam team;
  const std::vector<Vertex> start{1, 4};
  team.reset(start);
  const std::vector<Vertex> next{2, 3};
  team.observe(a, next);
  CHECK(team.positions() == std::vector<Vertex>{2, 3});
  const std::vector<Vertex> far{0, 5};
  CHECK_THROWS_AS(team.observe(a, far), PolicyError);
}

TEST_CASE("follower spies") {
  const auto a = make_path(9);
  SUBCASE("single follower stays on its revolutionary") {
    auto rev = random_policy();
    auto spy = follower_spies_default();
    const auto t = match(a, 1, 1, 1, 200, 3, *rev, *spy);
    for (std::size_t i = 0; i + 1 < t.entries.size(); i += 2) {
      CHECK(t.entries[i].positions == t.entries[i + 1].positions);
    }
    CHECK(t.max_unguarded == 0);
  }
  SUBCASE("a stationary revolutionary keeps its follower still") {
    FixedPolicy rev({4});
    auto spy = follower_spies_default();
    const auto t = match(a, 1, 1, 1, 20, 0, rev, *spy);
    for (std::size_t i = 1; i < t.entries.size(); i += 2) {
      CHECK(t.entries[i].positions == std::vector<Vertex>{4});
    }
  }
  SUBCASE("r-k+1 followers on trees guard every k-meeting") {
    for (const auto& tree : nonisomorphic_trees(6)) {
      auto rev = random_policy();
      auto spy = follower_spies_default();
      const auto t = match(tree, 4, 3, 2, 1000, 11, *rev, *spy);
      CHECK(t.outcome.kind == OutcomeKind::RoundLimit);
      CHECK(t.max_unguarded < 2);
    }
  }
  SUBCASE("more targets than spies is refused") {
    auto spy = follower_spies({0, 1, 2});
    CHECK_THROWS_AS(placed(*spy, a, {0, 1, 2}, 2), UsageError);
  }
}

TEST_CASE("order-statistic spies on a path") {
  const auto a = make_path(25);
  auto spy = order_statistic_spies_path(2);
  CHECK(placed(*spy, a, {0, 2, 2, 5}, 2) == std::vector<Vertex>{2, 5});
  CHECK(placed(*spy, a, {7, 7, 7, 7}, 2) == std::vector<Vertex>{7, 7});
  auto rev = random_policy();
  const auto t = match(a, 6, 3, 2, 10'000, 5, *rev, *spy);
  CHECK(t.outcome.kind == OutcomeKind::RoundLimit);
  CHECK(t.max_unguarded < 2);
}

TEST_CASE("coordinatewise median spy") {
  const auto a = make_arena("box:2:-10:10");
  auto spy = coordinatewise_orderstat_spy(2);
  CHECK(placed(*spy, a, {at(a, 0, 0), at(a, 2, 4), at(a, 5, 1)}, 1) ==
        std::vector<Vertex>{at(a, 2, 1)});
  const auto v = at(a, -3, 6);
  CHECK(placed(*spy, a, {v, v, v}, 1) == std::vector<Vertex>{v});
  auto rev = random_policy();
  const auto t = match(a, 3, 1, 2, 10'000, 2, *rev, *spy);
  CHECK(t.outcome.kind == OutcomeKind::RoundLimit);
  CHECK(t.max_unguarded < 2);
}

TEST_CASE("composite spies") {
  const auto a = make_arena("box:2:-11:11");
  auto spy = composite_zd_spies(2);
  const auto revs = formation(a);
  CHECK(placed(*spy, a, revs, 6).size() == 6);
  CHECK_THROWS(placed(*spy, a, revs, 5));
  // r = 2k needs two spies.
  auto small = composite_zd_spies(2);
  CHECK(placed(*small, a, {at(a, 0, 0), at(a, 1, 1), at(a, 2, 2), at(a, 3, 3)}, 2).size() == 2);
  auto rev = random_policy();
  const auto t = match(a, 8, 6, 2, 10'000, 9, *rev, *spy);
  CHECK(t.outcome.kind == OutcomeKind::RoundLimit);
  CHECK(t.max_unguarded < 2);
}

TEST_CASE("sum combinator") {
  const auto a = make_arena("box:2:-6:6");
  SUBCASE("one group plays exactly like its policy") {
    Partition parts;
    parts.groups.push_back({8, 6, 2, composite_zd_spies(2)});
    auto sum = sum_combinator(std::move(parts));
    auto plain = composite_zd_spies(2);
    auto r1 = random_policy();
    auto r2 = random_policy();
    const auto t1 = match(a, 8, 6, 2, 300, 4, *r1, *sum);
    const auto t2 = match(a, 8, 6, 2, 300, 4, *r2, *plain);
    REQUIRE(t1.entries.size() == t2.entries.size());
    for (std::size_t i = 0; i < t1.entries.size(); ++i) {
      CHECK(t1.entries[i].positions == t2.entries[i].positions);
    }
  }
  SUBCASE("two follower groups with k=1 follow everybody") {
    Partition parts;
    parts.groups.push_back({2, 2, 1, follower_spies_default()});
    parts.groups.push_back({3, 3, 1, follower_spies_default()});
    auto sum = sum_combinator(std::move(parts));
    auto rev = random_policy();
    const auto t = match(a, 5, 5, 1, 1000, 8, *rev, *sum);
    CHECK(t.max_unguarded == 0);
  }
  SUBCASE("two k=2 groups leave meetings of at most two") {
    auto sum = make_policy("sum:2,2", a, Team::Spy, 8, 4, 3);
    auto rev = greedy_crowding_revs();
    const auto t = match(a, 8, 4, 3, 10'000, 1, *rev, *sum);
    CHECK(t.outcome.kind != OutcomeKind::Forfeit);
    CHECK(t.max_unguarded <= 2);
  }
  SUBCASE("group sizes must add up") {
    Partition parts;
    parts.groups.push_back({3, 2, 2, composite_zd_spies(2)});
    auto sum = sum_combinator(std::move(parts));
    CHECK_THROWS_AS(placed(*sum, a, formation(a), 2), UsageError);
    CHECK_THROWS_AS(make_policy("sum:2,2", a, Team::Spy, 8, 5, 2), UsageError);
  }
}

TEST_CASE("power adaptor") {
  const auto p5 = make_path(5);
  const auto sq = power(p5, 2);
  SUBCASE("n=1 is the base policy") {
    auto lifted = power_adaptor(order_statistic_spies_path(2), p5, 1);
    auto plain = order_statistic_spies_path(2);
    auto r1 = random_policy();
    auto r2 = random_policy();
    const auto t1 = match(p5, 4, 2, 2, 200, 6, *r1, *lifted);
    const auto t2 = match(p5, 4, 2, 2, 200, 6, *r2, *plain);
    REQUIRE(t1.entries.size() == t2.entries.size());
    for (std::size_t i = 0; i < t1.entries.size(); ++i) {
      CHECK(t1.entries[i].positions == t2.entries[i].positions);
    }
  }
  SUBCASE("a jump of two feeds two sub-rounds") {
    auto calls = std::make_shared<int>(0);
    auto lifted = power_adaptor(std::make_unique<CountingSpies>(calls), p5, 2);
    ScriptPolicy rev({0}, {{2}});
    match(sq, 1, 1, 1, 1, 0, rev, *lifted);
    CHECK(*calls == 2);
  }
  SUBCASE("order statistics lifted to the square of P5") {
    auto lifted = make_policy("powerlift:2:path:5", sq, Team::Spy, 4, 2, 2);
    auto rev = random_policy();
    const auto t = match(sq, 4, 2, 2, 1000, 12, *rev, *lifted);
    CHECK(t.outcome.kind == OutcomeKind::RoundLimit);
    CHECK(t.max_unguarded < 2);
    CHECK_THROWS_AS(make_policy("powerlift:3:path:5", sq, Team::Spy, 4, 2, 2), UsageError);
  }
}

TEST_CASE("projection adaptor") {
  const auto p3 = make_path(3);
  const auto prod = strong_product(p3, p3);
  auto table = solve(p3, 4, 1, 2);
  REQUIRE(table->rev_wins());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto rev = projection_rev_adaptor(extract_policy(table, Team::Rev), p3, 3, Factor::First);
    auto spy = random_policy();
    MatchConfig c{4, 1, 2, 100, seed};
    const auto t = play(prod, c, *rev, *spy);
    for (const auto& e : t.entries) {
      if (e.team != Team::Rev) continue;
      for (Vertex v : e.positions) CHECK(v % 3 == 0);
    }
    CHECK(t.outcome.kind == OutcomeKind::RevWin);
    CHECK(t.outcome.round <= table->stats().states);
  }
  SUBCASE("the second factor keeps the first coordinate at zero") {
    auto rev = make_policy("project:second:path:3", prod, Team::Rev, 4, 1, 2);
    auto spy = make_policy("solver", prod, Team::Spy, 4, 1, 2);
    MatchConfig c{4, 1, 2, 100, 0};
    const auto t = play(prod, c, *rev, *spy);
    for (const auto& e : t.entries) {
      if (e.team != Team::Rev) continue;
      for (Vertex v : e.positions) CHECK(v < 3);
    }
    CHECK(t.outcome.kind == OutcomeKind::RevWin);
  }
}

TEST_CASE("group lift") {
  const auto p3 = make_path(3);
  SUBCASE("a=1 is the base policy") {
    auto lifted = group_lift_spies(order_statistic_spies_path(2), 1);
    auto plain = order_statistic_spies_path(2);
    auto r1 = random_policy();
    auto r2 = random_policy();
    const auto t1 = match(p3, 4, 2, 2, 100, 1, *r1, *lifted);
    const auto t2 = match(p3, 4, 2, 2, 100, 1, *r2, *plain);
    for (std::size_t i = 0; i < t1.entries.size(); ++i) {
      CHECK(t1.entries[i].positions == t2.entries[i].positions);
    }
  }
  SUBCASE("a solver spy for (P3,4,s,4) guards (P3,2,s,2)") {
    const auto s = sigma(p3, 4, 4);
    REQUIRE(s.exact());
    auto table = solve(p3, 4, s.value(), 4);
    REQUIRE_FALSE(table->rev_wins());
    auto rev_table = solve(p3, 2, s.value(), 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto spy = group_lift_spies(extract_policy(table, Team::Spy), 2);
      auto rev = seed == 0 ? extract_policy(rev_table, Team::Rev) : random_policy();
      const auto t = match(p3, 2, s.value(), 2, 500, seed, *rev, *spy);
      CHECK(t.outcome.kind == OutcomeKind::RoundLimit);
      CHECK(t.max_unguarded < 2);
    }
  }
}

TEST_CASE("formation policy") {
  const auto a = make_arena("box:2:-11:11");
  SUBCASE("an empty first box loses at (2,2) in round 1") {
    auto rev = theorem85_policy();
    FixedPolicy spy({at(a, 2, -2), at(a, -2, -2), at(a, -2, 2), at(a, 0, 0), at(a, 9, 9)});
    MatchConfig c{8, 5, 2, 10, 0};
    const auto t = play(a, c, *rev, spy);
    CHECK(t.outcome.kind == OutcomeKind::RevWin);
    CHECK(t.outcome.vertex == at(a, 2, 2));
    CHECK(t.outcome.round == 1);
  }
  SUBCASE("the case-1 position gets the case-1 move") {
    auto rev = theorem85_policy();
    FixedPolicy spy({at(a, 1, 1), at(a, 3, 3), at(a, -3, -3), at(a, -1, 1), at(a, 1, -1)});
    MatchConfig c{8, 5, 2, 1, 0};
    const auto t = play(a, c, *rev, spy);
    REQUIRE(t.entries.size() >= 3);
    const std::vector<Vertex> expected = sorted_copy(std::vector<Vertex>{
        at(a, 1, 1), at(a, 1, -1), at(a, -2, -2), at(a, 0, 0), at(a, 3, 3), at(a, 3, -3),
        at(a, -3, -3), at(a, -3, 3)});
    CHECK(t.entries[0].positions == formation(a));
    CHECK(t.entries[2].positions == expected);
  }
  SUBCASE("case-configuration spies lose within five rounds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto rev = theorem85_policy();
      auto spy = tree_adversary_spies();
      MatchConfig c{8, 5, 2, 20, seed};
      const auto t = play(a, c, *rev, *spy);
      CHECK(t.outcome.kind == OutcomeKind::RevWin);
      CHECK(t.outcome.round <= 5);
    }
  }
  SUBCASE("six composite spies hold") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto rev = theorem85_policy();
      auto spy = composite_zd_spies(2);
      MatchConfig c{8, 6, 2, 50, seed};
      CHECK(play(a, c, *rev, *spy).outcome.kind == OutcomeKind::RoundLimit);
    }
  }
  SUBCASE("needs exactly eight revolutionaries") {
    auto rev = theorem85_policy();
    auto spy = random_policy();
    MatchConfig c{9, 5, 2, 5, 0};
    CHECK(play(a, c, *rev, *spy).outcome.kind == OutcomeKind::Forfeit);
  }
}

TEST_CASE("replicated formations") {
  const auto a = make_arena("box:2:-11:71");
  SUBCASE("eight revolutionaries play one translated formation") {
    std::vector<Vertex> spots{at(a, 32, -2), at(a, 28, -2), at(a, 28, 2), at(a, 30, 0),
                              at(a, 39, 9)};
    auto rep = replicated_policy();
    auto single = theorem85_policy(certify::ProofTree::builtin(), {30, 0});
    FixedPolicy s1(spots), s2(spots);
    MatchConfig c{8, 5, 2, 10, 0};
    const auto t1 = play(a, c, *rep, s1);
    const auto t2 = play(a, c, *single, s2);
    REQUIRE(t1.entries.size() == t2.entries.size());
    for (std::size_t i = 0; i < t1.entries.size(); ++i) {
      CHECK(t1.entries[i].positions == t2.entries[i].positions);
    }
    CHECK(t1.outcome.vertex == at(a, 32, 2));
  }
  SUBCASE("sixteen against eleven engage a sparse box") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto rev = replicated_policy();
      auto spy = random_policy();
      MatchConfig c{16, 11, 2, 30, seed};
      const auto t = play(a, c, *rev, *spy);
      const bool engaged = std::any_of(t.notes.begin(), t.notes.end(), [](const std::string& n) {
        return n.find("engage box=") != std::string::npos;
      });
      CHECK(engaged);
      CHECK(t.outcome.kind != OutcomeKind::Forfeit);
    }
  }
}

TEST_CASE("strategies never make illegal moves") {
  struct Setup {
    const char* arena;
    const char* rev;
    const char* spy;
    std::uint32_t r, s, k;
  };
  const Setup setups[] = {
      {"path:12", "random", "orderstat", 5, 2, 2},
      {"path:12", "greedy", "follower", 3, 3, 1},
      {"box:2:-5:5", "random", "medianspy", 5, 1, 3},
      {"box:2:-5:5", "greedy", "composite", 7, 5, 2},
      {"box:2:-6:6", "random", "sum:2,2", 9, 5, 3},
      {"box:2:-11:11", "random", "guard", 8, 5, 2},
      {"box:2:-11:11", "greedy", "tree", 8, 5, 2},
      {"box:2:-11:11", "thm85", "random", 8, 5, 2},
      {"box:2:-11:11", "thm85", "guard", 8, 5, 2},
      {"power:2:path:6", "random", "powerlift:2:path:6", 4, 2, 2},
      {"cycle:7", "greedy", "random", 4, 2, 2},
  };
  for (const auto& su : setups) {
    const std::string label = std::string(su.rev) + " vs " + su.spy;
    CAPTURE(label);
    const auto a = make_arena(su.arena);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto rev = make_policy(su.rev, a, Team::Rev, su.r, su.s, su.k);
      auto spy = make_policy(su.spy, a, Team::Spy, su.r, su.s, su.k);
      const auto t = match(a, su.r, su.s, su.k, 300, seed, *rev, *spy);
      CHECK_MESSAGE(t.outcome.kind != OutcomeKind::Forfeit, t.outcome.detail);
    }
  }
}

TEST_CASE("strategy registry") {
  const auto a = make_arena("path:5");
  CHECK_THROWS_AS(make_policy("nope", a, Team::Spy, 2, 1, 1), UsageError);
  CHECK_THROWS_AS(make_policy("orderstat", a, Team::Rev, 2, 1, 1), UsageError);
  CHECK_THROWS_AS(make_policy("thm85", a, Team::Spy, 2, 1, 1), UsageError);
  CHECK_THROWS_AS(make_policy("random:3", a, Team::Spy, 2, 1, 1), UsageError);
  CHECK(make_policy("follower:0,1", a, Team::Spy, 2, 2, 1) != nullptr);
}

TEST_CASE("acceptance helpers") {
  const std::size_t counts[] = {1, 1, 1, 2, 3, 6, 11};
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto trees = nonisomorphic_trees(n);
    CHECK(trees.size() == counts[n - 1]);
    for (const auto& t : trees) CHECK(t.edge_count() == n - 1);
  }
  CHECK(order_statistic_shift({3, 1, 2}, {3, 1, 2}) == 0);
  CHECK(order_statistic_shift({0, 5}, {1, 4}) == 1);
  CHECK(order_statistic_shift({0, 5}, {3, 5}) == 3);
  CHECK_THROWS_AS(order_statistic_shift({1}, {1, 2}), UsageError);
}
