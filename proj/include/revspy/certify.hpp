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

#pragma once

// Threat certificates and the proof tree for the 8-versus-5 game on the
// king grid. Coordinates are plain lattice points; a spy that started
// outside the engagement box is represented as absent and never guards
// anything.

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace revspy::certify {

/// Half-width of the box in which a spy can still matter.
inline constexpr int kEngagement = 11;
/// Half-width of the box holding every threat vertex.
inline constexpr int kThreatBox = 6;
/// Rounds from placement by which every threat must have resolved.
inline constexpr int kMaxRounds = 5;

struct Point {
  int x = 0;
  int y = 0;
  static constexpr int kAbsentCoord = std::numeric_limits<int>::min();
  static constexpr Point absent() { return {kAbsentCoord, kAbsentCoord}; }
  constexpr bool is_absent() const { return x == kAbsentCoord; }
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
  Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  Point operator-(Point o) const { return {x - o.x, y - o.y}; }
};

/// Chebyshev distance; effectively infinite when either side is absent.
int distance(Point a, Point b);
std::string to_string(Point p);
/// Parses "(x,y)".
Point parse_point(std::string_view text);

/// Element of the dihedral group of the square acting on Z^2.
struct Symmetry {
  int a, b, c, d;  // (x,y) -> (a x + b y, c x + d y)
  std::string_view name;
  Point apply(Point p) const;
  Symmetry inverse() const;
  /// this after other.
  Symmetry compose(const Symmetry& other) const;
  bool operator==(const Symmetry& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
};
const std::array<Symmetry, 8>& dihedral_group();
const Symmetry& identity_symmetry();
const Symmetry& symmetry_by_name(std::string_view name);

struct Threat {
  Point vertex;
  int deadline = 0;
  std::array<Point, 2> pair;
  bool operator==(const Threat&) const = default;
};

/// Threats sorted by deadline (stable).
using ThreatSet = std::vector<Threat>;

void sort_threats(ThreatSet& threats);
std::string to_string(const Threat& threat);
std::string to_string(const ThreatSet& threats);
/// "(x,y)@t by (a,b)&(c,d); ..."
ThreatSet parse_threats(std::string_view text);
ThreatSet transform(const ThreatSet& threats, const Symmetry& g);

/// Can one spy stand on every threat vertex at its deadline, in order?
/// Throws UsageError when the threats are not sorted by deadline.
bool covers(Point spy, std::span<const Threat> threats);
/// Can the spies split the threats among themselves so that each spy
/// covers its share?
bool coverable(std::span<const Point> spies, const ThreatSet& threats);
/// Pairs are disjoint sub-multisets of `revs` and every rev is within its
/// threat's deadline.
bool realizable(std::span<const Point> revs, const ThreatSet& threats);

/// Rev positions per round (index-aligned with `revs`) that realize every
/// threat at its deadline. Threat revs wait out any slack first, then walk
/// the lexicographically smallest shortest path; other revs stay.
std::vector<std::vector<Point>> punish(std::span<const Point> revs,
                                       const ThreatSet& threats);

/// Finite union of rectangles and points, optionally with the "anywhere
/// or absent" wildcard.
class Region {
 public:
  static Region any();
  static Region rect(int x0, int x1, int y0, int y1);
  /// Tokens joined by '+': "(x,y)", "[a,b]x[c,d]", "{a}x[c,d]",
  /// "[a,b]x{c}", "any", or a name from `named`.
  static Region parse(std::string_view text,
                      const std::map<std::string, Region, std::less<>>& named = {});

  bool contains(Point p) const;
  bool is_any() const { return any_; }
  /// Sorted, with the absent marker last when present.
  const std::vector<Point>& points() const { return points_; }
  std::string text() const { return text_; }
  Region transformed(const Symmetry& g) const;
  bool operator==(const Region& o) const { return points_ == o.points_; }

 private:
  void finish();
  std::vector<Point> points_;
  bool any_ = false;
  std::string text_;
};

enum class NodeKind {
  /// Pigeonhole node: one box per threat; every box must hold a spy.
  Boxes,
  /// Slot-constrained configurations, optionally followed by a rev move.
  Cases,
};

struct CaseNode {
  std::string id;
  NodeKind kind = NodeKind::Cases;
  /// One region per spy (Cases) or one box per single-threat punishment
  /// (Boxes).
  std::vector<Region> slots;
  std::vector<std::pair<Point, Point>> move;
  std::vector<ThreatSet> punishments;
  std::vector<std::string> children;
  /// Filled in by ProofTree: positions when the node is entered, rounds
  /// elapsed since placement.
  std::vector<Point> revs;
  int depth = 0;

  bool has_move() const { return !move.empty(); }
  /// Rev positions against which punishments and children are judged.
  std::vector<Point> judged_revs() const;
  int judged_depth() const { return depth + (has_move() ? 1 : 0); }
};

struct Verdict {
  enum Kind { Gap, Won, Punished, Routed } kind = Gap;
  /// Punishment or child index.
  std::size_t index = 0;
  /// Maps judged coordinates to the child's coordinates.
  Symmetry symmetry{1, 0, 0, 1, "id"};
};

class ProofTree {
 public:
  static ProofTree parse(std::string_view text);
  static ProofTree builtin();
  static ProofTree load(const std::string& path);

  const CaseNode& root() const { return nodes_.front(); }
  const CaseNode& node(std::string_view id) const;
  CaseNode& mutable_node(std::string_view id);
  const std::vector<CaseNode>& nodes() const { return nodes_; }
  const CaseNode& child(const CaseNode& parent, std::size_t i) const;
  /// Recomputes rev positions and depths from the root down.
  void propagate();

  /// Classifies spy positions (judged coordinates, absent allowed).
  Verdict judge(const CaseNode& node, std::span<const Point> spies) const;

 private:
  std::vector<CaseNode> nodes_;
  std::map<std::string, Region, std::less<>> regions_;
  friend void apply_mutation(ProofTree& tree, std::string_view spec);
};

/// Rewrites the tree: "shrink-deadline[:node[:set[:threat]]]",
/// "delete-threat[:node[:set[:threat]]]", "widen-b1",
/// "widen:<node>:<slot>:<region>". Throws UsageError on a bad spec.
void apply_mutation(ProofTree& tree, std::string_view spec);

struct NodeReport {
  std::string id;
  std::uint64_t configs = 0;
  std::uint64_t punished = 0;
  std::uint64_t routed = 0;
  std::uint64_t gaps = 0;
  /// Structural problems (unrealizable threats, locality, bad routing).
  std::vector<std::string> errors;
  std::string first_gap;
  bool ok() const { return gaps == 0 && errors.empty(); }
  std::string line() const;
};

struct VerifyOptions {
  unsigned threads = 1;
};

NodeReport verify_node(const ProofTree& tree, const CaseNode& node,
                       const VerifyOptions& options = {});

struct TreeReport {
  std::vector<NodeReport> nodes;
  bool pass() const;
  std::string text() const;
};

/// Verifies every node reachable from the root, in tree order.
TreeReport verify_tree(const ProofTree& tree, const VerifyOptions& options = {});
TreeReport verify_theorem85(const VerifyOptions& options = {});

/// Number of spy responses of a node with a scripted move (9 per present
/// spy); 1 otherwise.
std::uint64_t responses_per_config(const CaseNode& node);

}  // namespace revspy::certify
