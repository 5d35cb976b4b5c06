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
#include <functional>
#include <random>

#include "doctest.h"
#include "revspy/certify.hpp"
#include "revspy/errors.hpp"

using namespace revspy;
using namespace revspy::certify;

namespace {

Point P(int x, int y) { return {x, y}; }

Threat T(Point v, int t, Point a = {0, 0}, Point b = {0, 0}) { return {v, t, {a, b}}; }

// Independent reference: try every map threat -> spy and replay each
// spy's share in deadline order.
bool coverable_oracle(const std::vector<Point>& spies, ThreatSet threats) {
  std::stable_sort(threats.begin(), threats.end(),
                   [](const Threat& a, const Threat& b) { return a.deadline < b.deadline; });
  if (threats.empty()) return true;
  if (spies.empty()) return false;
  std::vector<std::size_t> owner(threats.size(), 0);
  while (true) {
    bool ok = true;
    for (std::size_t s = 0; s < spies.size() && ok; ++s) {
      if (spies[s].is_absent()) {
        ok = std::find(owner.begin(), owner.end(), s) == owner.end();
        continue;
      }
      Point at = spies[s];
      int time = 0;
      for (std::size_t i = 0; i < threats.size() && ok; ++i) {
        if (owner[i] != s) continue;
        const int d = std::max(std::abs(at.x - threats[i].vertex.x),
                               std::abs(at.y - threats[i].vertex.y));
        ok = d <= threats[i].deadline - time;
        at = threats[i].vertex;
        time = threats[i].deadline;
      }
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < owner.size() && ++owner[i] == spies.size()) owner[i++] = 0;
    if (i == owner.size()) return false;
  }
}

std::vector<std::vector<Point>> slot_configs(const CaseNode& node) {
  std::vector<std::vector<Point>> out{{}};
  for (const auto& slot : node.slots) {
    std::vector<std::vector<Point>> next;
    for (const auto& partial : out) {
      for (Point p : slot.points()) {
        next.push_back(partial);
        next.back().push_back(p);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("covers") {
  const ThreatSet wedge = parse_threats("(0,2)@1 by (-1,1)&(1,1); (0,6)@3 by (-3,3)&(3,3)");
  CHECK(covers(P(1, 1), std::vector{wedge[0]}));
  CHECK(covers(P(3, 3), std::vector{wedge[1]}));
  CHECK_FALSE(covers(P(1, 1), wedge));
  const std::vector<Threat> unsorted{wedge[1], wedge[0]};
  CHECK_THROWS_AS(covers(P(0, 0), unsorted), UsageError);
  CHECK_FALSE(covers(Point::absent(), std::vector{wedge[1]}));
  CHECK(covers(P(5, 5), std::vector<Threat>{}));
}

TEST_CASE("coverable") {
  const ThreatSet wedge = parse_threats("(0,2)@1 by (-1,1)&(1,1); (0,6)@3 by (-3,3)&(3,3)");
  CHECK(coverable(std::vector{P(1, 1), P(3, 3)}, wedge));
  CHECK_FALSE(coverable(std::vector{P(0, 0), P(9, 9)}, wedge));
  CHECK(coverable(std::vector<Point>{}, ThreatSet{}));
  CHECK(coverable(std::vector{P(0, 0)}, ThreatSet{}));
  CHECK_FALSE(coverable(std::vector{Point::absent(), P(9, 9)}, wedge));
}

TEST_CASE("coverable agrees with exhaustive assignment") {
  std::mt19937 rng(17);
  auto coord = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<Point> spies;
    const int s = coord(1, 4);
    for (int i = 0; i < s; ++i) {
      spies.push_back(coord(0, 9) == 0 ? Point::absent() : P(coord(-5, 5), coord(-5, 5)));
    }
    ThreatSet threats;
    const int n = coord(0, 4);
    for (int i = 0; i < n; ++i) threats.push_back(T(P(coord(-5, 5), coord(-5, 5)), coord(1, 4)));
    sort_threats(threats);
    CHECK(coverable(spies, threats) == coverable_oracle(spies, threats));
    if (s == 1 && !spies[0].is_absent()) {
      CHECK(coverable(spies, threats) == covers(spies[0], threats));
    }
  }
}

TEST_CASE("realizable") {
  const std::vector<Point> revs{P(1, 1), P(1, -1), P(-1, -1), P(-1, 1),
                                P(3, 3), P(3, -3), P(-3, -3), P(-3, 3)};
  CHECK(realizable(revs, parse_threats("(0,2)@1 by (-1,1)&(1,1); (0,6)@3 by (-3,3)&(3,3)")));
  CHECK_FALSE(realizable(revs, parse_threats("(0,2)@1 by (-1,1)&(1,1); (2,0)@1 by (1,1)&(1,-1)")));
  CHECK_FALSE(realizable(revs, parse_threats("(0,6)@2 by (-3,3)&(3,3)")));
  CHECK_FALSE(realizable(revs, parse_threats("(5,5)@2 by (4,4)&(3,3)")));
  CHECK(realizable(revs, ThreatSet{}));
}

TEST_CASE("punish plans") {
  SUBCASE("one step to a neighbouring meeting") {
    const std::vector<Point> revs{P(1, 1), P(3, 3)};
    const auto plan = punish(revs, parse_threats("(2,2)@1 by (1,1)&(3,3)"));
    REQUIRE(plan.size() == 1);
    CHECK(plan[0] == std::vector{P(2, 2), P(2, 2)});
  }
  SUBCASE("three steps along lexicographically smallest paths") {
    const std::vector<Point> revs{P(-3, 3), P(3, 3)};
    const auto plan = punish(revs, parse_threats("(0,6)@3 by (-3,3)&(3,3)"));
    REQUIRE(plan.size() == 3);
    CHECK(plan[0] == std::vector{P(-2, 4), P(2, 4)});
    CHECK(plan[1] == std::vector{P(-1, 5), P(1, 5)});
    CHECK(plan[2] == std::vector{P(0, 6), P(0, 6)});
  }
  SUBCASE("already met at deadline zero") {
    const std::vector<Point> revs{P(4, 4), P(4, 4)};
    CHECK(punish(revs, parse_threats("(4,4)@0 by (4,4)&(4,4)")).empty());
  }
  SUBCASE("slack is spent waiting") {
    const std::vector<Point> revs{P(0, 0), P(2, 0), P(7, 7)};
    const auto plan = punish(revs, parse_threats("(1,0)@3 by (0,0)&(2,0)"));
    REQUIRE(plan.size() == 3);
    CHECK(plan[1] == revs);
    CHECK(plan[2] == std::vector{P(1, 0), P(1, 0), P(7, 7)});
  }
  SUBCASE("unrealizable sets are refused") {
    const std::vector<Point> revs{P(0, 0), P(6, 0)};
    CHECK_THROWS_AS(punish(revs, parse_threats("(3,0)@1 by (0,0)&(6,0)")), UsageError);
  }
}

TEST_CASE("every punishment of the built-in tree replays legally") {
  const auto tree = ProofTree::builtin();
  std::size_t sets = 0;
  for (const auto& node : tree.nodes()) {
    const auto revs = node.judged_revs();
    for (const auto& threats : node.punishments) {
      ++sets;
      CHECK(realizable(revs, threats));
      const auto plan = punish(revs, threats);
      auto prev = revs;
      for (const auto& step : plan) {
        for (std::size_t i = 0; i < step.size(); ++i) CHECK(distance(prev[i], step[i]) <= 1);
        prev = step;
      }
      for (const auto& t : threats) {
        if (t.deadline == 0) continue;
        const auto& row = plan[static_cast<std::size_t>(t.deadline - 1)];
        CHECK(std::count(row.begin(), row.end(), t.vertex) >= 2);
      }
    }
  }
  CHECK(sets > 20);
}

TEST_CASE("locality of the built-in tree") {
  const auto tree = ProofTree::builtin();
  for (const auto& node : tree.nodes()) {
    for (const auto& threats : node.punishments) {
      for (const auto& t : threats) {
        CHECK(std::max(std::abs(t.vertex.x), std::abs(t.vertex.y)) <= kThreatBox);
        CHECK(node.judged_depth() + t.deadline <= kMaxRounds);
      }
    }
  }
}

TEST_CASE("text round trips") {
  const std::string text = "(0,2)@1 by (-1,1)&(1,1); (0,6)@3 by (-3,3)&(3,3)";
  CHECK(to_string(parse_threats(text)) == text);
  CHECK(parse_point("(-4,7)") == P(-4, 7));
  CHECK_THROWS_AS(parse_point("(1;2)"), UsageError);
  CHECK_THROWS_AS(parse_threats("(0,2)@x by (1,1)&(2,2)"), UsageError);
  const auto r = Region::parse("{1}x[-3,-2]+(5,5)");
  CHECK(r.points() == std::vector{P(1, -3), P(1, -2), P(5, 5)});
  CHECK(r.contains(P(5, 5)));
  CHECK_FALSE(r.contains(P(1, -1)));
  CHECK(Region::any().contains(Point::absent()));
  CHECK(Region::parse("[0,1]x[0,1]").transformed(symmetry_by_name("r90")).points().size() == 4);
}

TEST_CASE("the dihedral group is closed") {
  for (const auto& g : dihedral_group()) {
    CHECK(g.compose(g.inverse()) == identity_symmetry());
    for (const auto& h : dihedral_group()) {
      const auto gh = g.compose(h);
      CHECK(std::any_of(dihedral_group().begin(), dihedral_group().end(),
                        [&](const Symmetry& x) { return x == gh; }));
      CHECK(gh.apply(P(2, 5)) == g.apply(h.apply(P(2, 5))));
    }
  }
}

TEST_CASE("judging positions") {
  const auto tree = ProofTree::builtin();
  SUBCASE("an empty first box is punished at (2,2)") {
    const auto& root = tree.root();
    const std::vector<Point> spies{P(2, -2), P(-2, -2), P(-2, 2), P(0, 0), P(9, 9)};
    const auto v = tree.judge(root, spies);
    REQUIRE(v.kind == Verdict::Punished);
    CHECK(to_string(root.punishments[v.index]) == "(2,2)@1 by (1,1)&(3,3)");
    CHECK_FALSE(coverable(spies, root.punishments[v.index]));
  }
  SUBCASE("case 1 response leaving the lower strip empty is punished") {
    const auto& node = tree.node("case1");
    const std::vector<Point> spies{P(1, 1), P(3, 3), P(-3, -3), P(-1, 1), P(1, -1)};
    const auto v = tree.judge(node, spies);
    CHECK(v.kind == Verdict::Punished);
  }
  SUBCASE("case 2 forced leaf against the triple threat") {
    const auto& node = tree.node("case2-forced");
    const ThreatSet triple = parse_threats(
        "(-1,0)@1 by (0,0)&(-1,-1); (-1,-3)@2 by (1,-1)&(-3,-3); (4,-1)@2 by (2,1)&(3,-3)");
    for (const auto& spies : slot_configs(node)) {
      CHECK_FALSE(coverable(spies, triple));
      CHECK(tree.judge(node, spies).kind == Verdict::Punished);
    }
  }
  SUBCASE("forced case 1 position routes to its leaf") {
    const auto& node = tree.node("case1");
    const std::vector<Point> spies{P(3, 3), P(-3, -3), P(1, 0), P(-2, 0), P(1, -3)};
    const auto v = tree.judge(node, spies);
    REQUIRE(v.kind == Verdict::Routed);
    CHECK(tree.child(node, v.index).id == "case1-forced");
  }
}

TEST_CASE("verifying leaves and mutations") {
  auto tree = ProofTree::builtin();
  for (const char* id : {"case1-forced", "case2-forced"}) {
    const auto r = verify_node(tree, tree.node(id));
    CHECK(r.ok());
    CHECK(r.configs == slot_configs(tree.node(id)).size());
    CHECK(r.punished == r.configs);
  }
  CHECK(verify_node(tree, tree.root()).ok());

  SUBCASE("shorter deadline") {
    apply_mutation(tree, "shrink-deadline");
    CHECK_FALSE(verify_node(tree, tree.node("case1-forced")).ok());
  }
  SUBCASE("deleted threat") {
    apply_mutation(tree, "delete-threat");
    CHECK_FALSE(verify_node(tree, tree.node("case2-forced")).ok());
  }
  SUBCASE("wider first box") {
    apply_mutation(tree, "widen-b1");
    CHECK_FALSE(verify_node(tree, tree.root()).ok());
  }
  SUBCASE("bad mutation spec") {
    CHECK_THROWS_AS(apply_mutation(tree, "explode"), UsageError);
  }
}

TEST_CASE("small hand-written trees") {
  const auto tree = ProofTree::parse(R"(
node root cases
  revs (0,0) (2,0) (5,5) (5,5) (5,5) (5,5) (5,5) (5,5)
  slot (4,4)
  slot (0,3)+(3,3)
  punish (1,0)@1 by (0,0)&(2,0)
end
)");
  const auto report = verify_tree(tree);
  REQUIRE(report.nodes.size() == 1);
  CHECK(report.nodes[0].configs == 2);
  CHECK(report.nodes[0].gaps == 0);
  CHECK(report.pass());
  CHECK(report.text().find("PASS nodes=1") != std::string::npos);

  const auto leaky = ProofTree::parse(R"(
node root cases
  revs (0,0) (2,0) (5,5) (5,5) (5,5) (5,5) (5,5) (5,5)
  slot (1,1)+(4,4)
  punish (1,0)@1 by (0,0)&(2,0)
end
)");
  const auto bad = verify_tree(leaky);
  CHECK_FALSE(bad.pass());
  CHECK(bad.nodes[0].gaps == 1);
  CHECK(bad.text().find("FAIL node=root") != std::string::npos);

  CHECK_THROWS_AS(ProofTree::parse("node x cases\n  slot (1,1)\n"), UsageError);
  CHECK_THROWS(ProofTree::load("/nonexistent/tree.txt"));
}
