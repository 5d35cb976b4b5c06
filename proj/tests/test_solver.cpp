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

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "revspy/errors.hpp"
#include "revspy/solver.hpp"

using namespace revspy;

namespace {

Vertex at(const Arena& a, int x, int y) {
  const int c[2] = {x, y};
  return a.vertex_at(c).value();
}

Arena random_graph(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng() % 3 == 0) edges.emplace_back(u, v);
    }
  }
  return Arena::from_edges(n, edges);
}

}  // namespace

TEST_CASE("multiset index is a bijection onto colex ranks") {
  for (std::size_t n : {1u, 2u, 5u}) {
    for (std::uint32_t m : {0u, 1u, 3u}) {
      MultisetIndex index(n, m);
      auto expected = oracle::all_multisets(n, m);
      CHECK(index.size() == expected.size());
      std::set<std::vector<Vertex>> seen;
      for (std::uint32_t i = 0; i < index.size(); ++i) {
        auto ms = index.unrank(i);
        CHECK(index.rank(ms) == i);
        CHECK(std::is_sorted(ms.begin(), ms.end()));
        seen.emplace(ms.begin(), ms.end());
      }
      CHECK(seen.size() == expected.size());
    }
  }
  CHECK(multiset_count(6, 5) == 252);
  CHECK(estimate_states(9, 4, 3) == 495ull * 165 * 2);
}

TEST_CASE("successor multisets match the naive product") {
  std::mt19937_64 rng(5);
  Arena a = make_arena("king:3x3");
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vertex> team(1 + rng() % 4);
    for (auto& v : team) v = rng() % a.size();
    std::sort(team.begin(), team.end());
    auto fast = successor_multisets(a, team);
    auto slow = oracle::one_move(a, team);
    CHECK(std::set<std::vector<Vertex>>(fast.begin(), fast.end()) == slow);
    CHECK(fast.size() == slow.size());
  }
}

TEST_CASE("rev_wins small cases") {
  CHECK_FALSE(rev_wins(make_path(1), 2, 1, 2));
  for (const char* spec : {"path:1", "path:4", "cycle:5", "king:3x3"}) {
    CHECK_FALSE(rev_wins(make_arena(spec), 1, 0, 2));
  }
  CHECK(rev_wins(make_path(2), 2, 0, 2));
}

TEST_CASE("solver agrees with value iteration on small graphs") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    Arena a = random_graph(rng, n);
    const std::uint32_t r = 1 + rng() % 4;
    const std::uint32_t s = rng() % 3;
    const std::uint32_t k = 1 + rng() % 3;
    CAPTURE(n);
    CAPTURE(r);
    CAPTURE(s);
    CAPTURE(k);
    CHECK(rev_wins(a, r, s, k) == oracle::brute_force_rev_wins(a, r, s, k));
    ++checked;
  }
  for (const char* spec : {"cycle:4", "star:4", "power:2:path:4"}) {
    Arena a = make_arena(spec);
    for (std::uint32_t r = 1; r <= 3; ++r) {
      for (std::uint32_t s = 0; s <= 2; ++s) {
        CHECK(rev_wins(a, r, s, 2) == oracle::brute_force_rev_wins(a, r, s, 2));
      }
    }
  }
  CHECK(checked == 40);
}

TEST_CASE("sigma examples") {
  auto p4 = sigma(make_path(4), 4, 2);
  CHECK(p4.exact());
  CHECK(p4.value() == 2);
  CHECK(p4.bracket.lo == 2);
  CHECK(p4.bracket.hi == 3);
  CHECK(sigma(make_cycle(4), 3, 2).value() == 2);
  CHECK(sigma(make_path(1), 7, 3).value() == 1);
  CHECK(sigma(make_path(3), 1, 2).value() == 0);
}

TEST_CASE("sigma matches the brute-force oracle") {
  for (const char* spec : {"cycle:3", "cycle:4", "star:4", "path:3"}) {
    Arena a = make_arena(spec);
    for (std::uint32_t r = 1; r <= 3; ++r) {
      for (std::uint32_t k = 1; k <= 2; ++k) {
        CHECK(sigma(a, r, k).value() == oracle::brute_force_sigma(a, r, k));
      }
    }
  }
}

TEST_CASE("spy wins are monotone in s") {
  for (const char* spec : {"cycle:5", "star:5", "king:2x3"}) {
    Arena a = make_arena(spec);
    for (std::uint32_t r = 2; r <= 4; ++r) {
      bool spies_won = false;
      for (std::uint32_t s = 0; s <= 3; ++s) {
        const bool revs = rev_wins(a, r, s, 2);
        if (spies_won) CHECK_FALSE(revs);
        spies_won = spies_won || !revs;
      }
    }
  }
}

TEST_CASE("shuffled worklist order gives the same table") {
  Arena a = make_arena("king:2x3");
  auto base = solve(a, 3, 2, 2);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SolveOptions options;
    options.shuffle_seed = seed;
    auto shuffled = solve(a, 3, 2, 2, options);
    CHECK(shuffled->status_bits() == base->status_bits());
  }
}

TEST_CASE("budget is enforced") {
  SolveOptions options;
  options.budget = 10;
  try {
    (void)solve(make_path(6), 3, 2, 2, options);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.estimate() == estimate_states(6, 3, 2));
  }
  auto partial = sigma(make_path(6), 4, 2, options);
  CHECK_FALSE(partial.exact());
  CHECK(partial.lo == 2);
  CHECK(partial.hi == 3);
}

TEST_CASE("extracted policies") {
  {
    Arena p1 = make_path(1);
    auto table = solve(p1, 2, 1, 2);
    auto spy = extract_policy(table, Team::Spy);
    auto state = GameState::spy_to_move(p1, {0, 0}, {0});
    CHECK(spy->move(state).targets == std::vector<Vertex>{0});
  }
  {
    Arena p2 = make_path(2);
    auto table = solve(p2, 2, 0, 2);
    auto rev = extract_policy(table, Team::Rev);
    auto spy = extract_policy(table, Team::Spy);
    Trace t = play(p2, {.r = 2, .s = 0, .k = 2, .max_rounds = 10}, *rev, *spy);
    CHECK(t.outcome.kind == OutcomeKind::RevWin);
    CHECK(t.outcome.round == 0);
  }
  {
    Arena p4 = make_path(4);
    auto spy_table = solve(p4, 4, 2, 2);
    REQUIRE_FALSE(spy_table->rev_wins());
    auto spy = extract_policy(spy_table, Team::Spy);
    auto rev = extract_policy(spy_table, Team::Rev);
    Trace t = play(p4, {.r = 4, .s = 2, .k = 2, .max_rounds = 100}, *rev, *spy);
    CHECK(t.outcome.kind == OutcomeKind::RoundLimit);
  }
  {
    // With one spy too few the extracted revolutionaries win quickly.
    Arena p4 = make_path(4);
    auto table = solve(p4, 4, 1, 2);
    REQUIRE(table->rev_wins());
    auto spy = extract_policy(table, Team::Spy);
    auto rev = extract_policy(table, Team::Rev);
    Trace t = play(p4, {.r = 4, .s = 1, .k = 2, .max_rounds = 100}, *rev, *spy);
    CHECK(t.outcome.kind == OutcomeKind::RevWin);
    CHECK(t.outcome.round <= table->stats().states);
  }
}

TEST_CASE("extracted revolutionaries beat every spy reply in small games") {
  // Rev policy vs the value-iteration oracle's claim: from each won
  // rev-to-move state, every spy reply line ends in a win.
  Arena a = make_arena("cycle:5");
  auto table = solve(a, 3, 1, 2);
  REQUIRE(table->rev_wins());
  auto rev = extract_policy(table, Team::Rev);
  std::mt19937_64 rng(9);
  for (int game = 0; game < 30; ++game) {
    GameState state = GameState::initial(a);
    state = apply(state, {rev->place(state, 3)});
    state = apply(state, {{static_cast<Vertex>(rng() % 5)}});
    bool won = unguarded_meeting(state.revs, state.spies, 2).has_value();
    for (int round = 0; round < 100 && !won; ++round) {
      state = apply(state, rev->move(state));
      auto replies = legal_joint_moves(state);
      state = apply(state, replies[rng() % replies.size()]);
      won = unguarded_meeting(state.revs, state.spies, 2).has_value();
    }
    CHECK(won);
  }
}

TEST_CASE("bounded_rev_wins") {
  Arena box = make_arena("box:2:-6:6");
  {
    auto state = GameState::rev_to_move(box, {at(box, 3, 3), at(box, 1, 1)},
                                        {at(box, -4, -4)});
    CHECK(bounded_rev_wins(state, 2, 1));
  }
  {
    // A spy at (0,1) reaches all three common neighbours (0,0),(0,1),(0,2).
    auto state = GameState::rev_to_move(box, {at(box, 1, 1), at(box, -1, 1)},
                                        {at(box, 0, 1)});
    CHECK_FALSE(bounded_rev_wins(state, 2, 1));
    CHECK_FALSE(bounded_rev_wins(state, 2, 3));
  }
  {
    // From (0,2) the meeting point (0,0) is two steps away.
    auto state = GameState::rev_to_move(box, {at(box, 1, 1), at(box, -1, 1)},
                                        {at(box, 0, 2)});
    CHECK(bounded_rev_wins(state, 2, 1));
  }
  {
    auto state = GameState::rev_to_move(box, {at(box, 1, 1), at(box, 1, 1)},
                                        {at(box, 5, 5)});
    CHECK(bounded_rev_wins(state, 2, 0));
    auto guarded = GameState::rev_to_move(box, {at(box, 1, 1), at(box, 1, 1)},
                                          {at(box, 1, 1)});
    CHECK_FALSE(bounded_rev_wins(guarded, 2, 0));
  }
}

TEST_CASE("bounded search agrees with the fixed point on small games") {
  // A won rev-to-move state is won within (number of states) rounds; a
  // spy-won state is never won. Horizon 6 is plenty on these arenas.
  for (const char* spec : {"path:4", "cycle:5"}) {
    Arena a = make_arena(spec);
    auto table = solve(a, 3, 1, 2);
    for (std::uint32_t ri = 0; ri < table->rev_index().size(); ++ri) {
      for (std::uint32_t si = 0; si < table->spy_index().size(); ++si) {
        auto R = table->rev_index().unrank(ri);
        auto S = table->spy_index().unrank(si);
        auto state = GameState::rev_to_move(a, {R.begin(), R.end()},
                                            {S.begin(), S.end()});
        const bool fixed_point = table->status(state) == Status::RevWin;
        CHECK(bounded_rev_wins(state, 2, 6) == fixed_point);
      }
    }
  }
}

TEST_CASE("region-constrained spies") {
  Arena box = make_arena("box:2:-4:4");
  auto state = GameState::rev_to_move(box, {at(box, -2, 0), at(box, 2, 0)},
                                      {at(box, -1, 0)});
  // A free spy steps onto the column x = 0 and shadows the approach.
  CHECK_FALSE(bounded_rev_wins(state, 2, 2));
  std::vector<Vertex> left;
  for (Vertex v = 0; v < box.size(); ++v) {
    if (box.coords(v)[0] <= -1) left.push_back(v);
  }
  CHECK(bounded_rev_wins(state, 2, 2, std::vector<std::vector<Vertex>>{left}));
}
