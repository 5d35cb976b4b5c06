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

#include "revspy/certify.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "revspy/errors.hpp"

namespace revspy::certify {

namespace {

constexpr int kFar = 1 << 20;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("bad integer '" + std::string(text) + "'");
  }
  return value;
}

std::vector<Point> sorted(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  return points;
}

std::vector<Point> transformed(std::span<const Point> points,
                               const Symmetry& g) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (Point p : points) out.push_back(g.apply(p));
  return out;
}

/// Symmetries mapping the multiset onto itself.
std::vector<Symmetry> stabilizer(std::span<const Point> revs) {
  std::vector<Symmetry> out;
  const auto base = sorted({revs.begin(), revs.end()});
  for (const auto& g : dihedral_group()) {
    if (sorted(transformed(revs, g)) == base) out.push_back(g);
  }
  return out;
}

/// Kuhn matching of spies onto slots.
bool match_slots(std::span<const Point> spies, const std::vector<Region>& slots) {
  const std::size_t n = slots.size();
  if (spies.size() > n) return false;
  std::vector<Point> padded(spies.begin(), spies.end());
  padded.resize(n, Point::absent());
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> seen(n, 0);
    auto augment = [&](auto&& self, std::size_t spy) -> bool {
      for (std::size_t j = 0; j < n; ++j) {
        if (seen[j] || !slots[j].contains(padded[spy])) continue;
        seen[j] = 1;
        if (owner[j] < 0 || self(self, static_cast<std::size_t>(owner[j]))) {
          owner[j] = static_cast<int>(spy);
          return true;
        }
      }
      return false;
    };
    if (!augment(augment, i)) return false;
  }
  return true;
}

bool has_unguarded_pair(std::span<const Point> revs, std::span<const Point> spies) {
  auto s = sorted({revs.begin(), revs.end()});
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == s[i + 1] &&
        std::find(spies.begin(), spies.end(), s[i]) == spies.end()) {
      return true;
    }
  }
  return false;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (std::uint64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

int distance(Point a, Point b) {
  if (a.is_absent() || b.is_absent()) return kFar;
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

std::string to_string(Point p) {
  if (p.is_absent()) return "absent";
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

Point parse_point(std::string_view text) {
  auto s = strip_spaces(text);
  if (s == "absent") return Point::absent();
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') {
    throw UsageError("bad point '" + s + "'");
  }
  auto parts = split(std::string_view(s).substr(1, s.size() - 2), ',');
  if (parts.size() != 2) throw UsageError("bad point '" + s + "'");
  return {parse_int(parts[0]), parse_int(parts[1])};
}

Point Symmetry::apply(Point p) const {
  if (p.is_absent()) return p;
  return {a * p.x + b * p.y, c * p.x + d * p.y};
}

Symmetry Symmetry::compose(const Symmetry& o) const {
  const Symmetry m{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                   c * o.b + d * o.d, ""};
  for (const auto& g : dihedral_group()) {
    if (g == m) return g;
  }
  throw UsageError("symmetry composition left the group");
}

Symmetry Symmetry::inverse() const {
  for (const auto& g : dihedral_group()) {
    if (compose(g) == identity_symmetry()) return g;
  }
  throw UsageError("symmetry without inverse");
}

const std::array<Symmetry, 8>& dihedral_group() {
  static const std::array<Symmetry, 8> group{{
      {1, 0, 0, 1, "id"},
      {0, -1, 1, 0, "r90"},
      {-1, 0, 0, -1, "r180"},
      {0, 1, -1, 0, "r270"},
      {-1, 0, 0, 1, "fx"},
      {1, 0, 0, -1, "fy"},
      {0, 1, 1, 0, "fd"},
      {0, -1, -1, 0, "fa"},
  }};
  return group;
}

const Symmetry& identity_symmetry() { return dihedral_group()[0]; }

const Symmetry& symmetry_by_name(std::string_view name) {
  for (const auto& g : dihedral_group()) {
    if (g.name == name) return g;
  }
  throw UsageError("unknown symmetry '" + std::string(name) + "'");
}

void sort_threats(ThreatSet& threats) {
  for (auto& t : threats) {
    if (t.pair[1] < t.pair[0]) std::swap(t.pair[0], t.pair[1]);
  }
  std::stable_sort(threats.begin(), threats.end(),
                   [](const Threat& a, const Threat& b) {
                     return a.deadline < b.deadline;
                   });
}

std::string to_string(const Threat& t) {
  return to_string(t.vertex) + "@" + std::to_string(t.deadline) + " by " +
         to_string(t.pair[0]) + "&" + to_string(t.pair[1]);
}

std::string to_string(const ThreatSet& threats) {
  std::string out;
  for (const auto& t : threats) {
    if (!out.empty()) out += "; ";
    out += to_string(t);
  }
  return out;
}

ThreatSet parse_threats(std::string_view text) {
  ThreatSet out;
  for (const auto& item : split(text, ';')) {
    if (item.empty()) continue;
    auto s = strip_spaces(item);
    auto at = s.find('@');
    auto by = s.find("by");
    auto amp = s.find('&');
    if (at == std::string::npos || by == std::string::npos ||
        amp == std::string::npos || !(at < by && by < amp)) {
      throw UsageError("bad threat '" + item + "'");
    }
    Threat t;
    t.vertex = parse_point(s.substr(0, at));
    t.deadline = parse_int(s.substr(at + 1, by - at - 1));
    t.pair = {parse_point(s.substr(by + 2, amp - by - 2)),
              parse_point(s.substr(amp + 1))};
    if (t.deadline < 0) throw UsageError("negative deadline in '" + item + "'");
    out.push_back(t);
  }
  sort_threats(out);
  return out;
}

ThreatSet transform(const ThreatSet& threats, const Symmetry& g) {
  ThreatSet out;
  for (const auto& t : threats) {
    out.push_back({g.apply(t.vertex), t.deadline,
                   {g.apply(t.pair[0]), g.apply(t.pair[1])}});
  }
  sort_threats(out);
  return out;
}

bool covers(Point spy, std::span<const Threat> threats) {
  for (std::size_t j = 1; j < threats.size(); ++j) {
    if (threats[j].deadline < threats[j - 1].deadline) {
      throw UsageError("threats not sorted by deadline");
    }
  }
  Point at = spy;
  int time = 0;
  for (const auto& t : threats) {
    if (distance(at, t.vertex) > t.deadline - time) return false;
    at = t.vertex;
    time = t.deadline;
  }
  return true;
}

bool coverable(std::span<const Point> spies, const ThreatSet& threats) {
  for (std::size_t j = 1; j < threats.size(); ++j) {
    if (threats[j].deadline < threats[j - 1].deadline) {
      throw UsageError("threats not sorted by deadline");
    }
  }
  // Each spy carries (position, time) of its last assigned threat; threats
  // are handed out in deadline order, so feasibility is incremental.
  std::vector<Point> at(spies.begin(), spies.end());
  std::vector<int> time(spies.size(), 0);
  auto assign = [&](auto&& self, std::size_t j) -> bool {
    if (j == threats.size()) return true;
    const auto& t = threats[j];
    for (std::size_t i = 0; i < at.size(); ++i) {
      if (distance(at[i], t.vertex) > t.deadline - time[i]) continue;
      const Point saved_at = at[i];
      const int saved_time = time[i];
      at[i] = t.vertex;
      time[i] = t.deadline;
      const bool ok = self(self, j + 1);
      at[i] = saved_at;
      time[i] = saved_time;
      if (ok) return true;
    }
    return false;
  };
  return assign(assign, 0);
}

bool realizable(std::span<const Point> revs, const ThreatSet& threats) {
  std::map<Point, int> free;
  for (Point p : revs) ++free[p];
  for (const auto& t : threats) {
    for (Point p : t.pair) {
      if (p.is_absent() || --free[p] < 0) return false;
      if (distance(p, t.vertex) > t.deadline) return false;
    }
  }
  return true;
}

std::vector<std::vector<Point>> punish(std::span<const Point> revs,
                                       const ThreatSet& threats) {
  if (!realizable(revs, threats)) {
    throw UsageError("threat set is not realizable: " + to_string(threats));
  }
  int horizon = 0;
  for (const auto& t : threats) horizon = std::max(horizon, t.deadline);
  std::vector<std::vector<Point>> plan(
      static_cast<std::size_t>(horizon),
      std::vector<Point>(revs.begin(), revs.end()));
  std::vector<char> used(revs.size(), 0);
  for (const auto& t : threats) {
    for (Point start : t.pair) {
      std::size_t agent = 0;
      while (used[agent] || revs[agent] != start) ++agent;
      used[agent] = 1;
      Point at = start;
      const int slack = t.deadline - distance(start, t.vertex);
      for (int round = 1; round <= horizon; ++round) {
        if (round > slack && round <= t.deadline) {
          const int left = t.deadline - round;
          Point best = at;
          bool found = false;
          for (int dx = -1; dx <= 1 && !found; ++dx) {
            for (int dy = -1; dy <= 1 && !found; ++dy) {
              Point q{at.x + dx, at.y + dy};
              if (distance(q, t.vertex) <= left) {
                best = q;
                found = true;
              }
            }
          }
          at = best;
        }
        plan[static_cast<std::size_t>(round - 1)][agent] = at;
      }
    }
  }
  return plan;
}

Region Region::any() {
  Region r;
  r.any_ = true;
  r.text_ = "any";
  r.finish();
  return r;
}

Region Region::rect(int x0, int x1, int y0, int y1) {
  Region r;
  for (int x = x0; x <= x1; ++x) {
    for (int y = y0; y <= y1; ++y) r.points_.push_back({x, y});
  }
  r.text_ = "[" + std::to_string(x0) + "," + std::to_string(x1) + "]x[" +
            std::to_string(y0) + "," + std::to_string(y1) + "]";
  r.finish();
  return r;
}

void Region::finish() {
  if (any_) {
    for (int x = -kEngagement; x <= kEngagement; ++x) {
      for (int y = -kEngagement; y <= kEngagement; ++y) points_.push_back({x, y});
    }
    points_.push_back(Point::absent());
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (points_.empty()) throw UsageError("empty region '" + text_ + "'");
}

Region Region::parse(std::string_view text,
                     const std::map<std::string, Region, std::less<>>& named) {
  Region r;
  r.text_ = strip_spaces(text);
  auto interval = [&](std::string_view s) -> std::pair<int, int> {
    if (s.size() >= 3 && s.front() == '{' && s.back() == '}') {
      int v = parse_int(s.substr(1, s.size() - 2));
      return {v, v};
    }
    if (s.size() >= 5 && s.front() == '[' && s.back() == ']') {
      auto parts = split(s.substr(1, s.size() - 2), ',');
      if (parts.size() == 2) return {parse_int(parts[0]), parse_int(parts[1])};
    }
    throw UsageError("bad interval '" + std::string(s) + "'");
  };
  for (const auto& token : split(r.text_, '+')) {
    if (token == "any") {
      r.any_ = true;
    } else if (auto it = named.find(token); it != named.end()) {
      r.any_ = r.any_ || it->second.any_;
      r.points_.insert(r.points_.end(), it->second.points_.begin(),
                       it->second.points_.end());
    } else if (!token.empty() && token.front() == '(') {
      r.points_.push_back(parse_point(token));
    } else {
      // Split "[a,b]x[c,d]" at the 'x' between the two intervals.
      auto close = token.find_first_of("]}");
      if (close == std::string::npos || close + 1 >= token.size() ||
          token[close + 1] != 'x') {
        throw UsageError("bad region token '" + token + "'");
      }
      auto [x0, x1] = interval(std::string_view(token).substr(0, close + 1));
      auto [y0, y1] = interval(std::string_view(token).substr(close + 2));
      if (x0 > x1 || y0 > y1) throw UsageError("empty interval in '" + token + "'");
      for (int x = x0; x <= x1; ++x) {
        for (int y = y0; y <= y1; ++y) r.points_.push_back({x, y});
      }
    }
  }
  r.finish();
  return r;
}

bool Region::contains(Point p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

Region Region::transformed(const Symmetry& g) const {
  Region r;
  r.any_ = any_;
  for (Point p : points_) r.points_.push_back(g.apply(p));
  r.text_ = std::string(g.name) + "(" + text_ + ")";
  r.finish();
  return r;
}

std::vector<Point> CaseNode::judged_revs() const {
  std::vector<Point> out = revs;
  for (auto [from, to] : move) {
    auto it = std::find(out.begin(), out.end(), from);
    if (it == out.end()) {
      throw UsageError("node " + id + ": no revolutionary at " + to_string(from));
    }
    *it = to;
  }
  return sorted(out);
}

namespace {

struct RawNode {
  CaseNode node;
  std::vector<ThreatSet> closures;
  std::vector<Point> revs;
};

}  // namespace

ProofTree ProofTree::parse(std::string_view text) {
  ProofTree tree;
  std::vector<RawNode> raw;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  RawNode* open = nullptr;
  auto fail = [&](const std::string& what) -> UsageError {
    return UsageError("proof tree line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto body = std::string(trim(line));
    if (body.empty()) continue;
    auto space = body.find(' ');
    auto keyword = body.substr(0, space);
    auto rest = space == std::string::npos ? std::string()
                                           : std::string(trim(body.substr(space)));
    try {
      if (keyword == "region") {
        auto eq = rest.find('=');
        if (eq == std::string::npos) throw fail("region needs '='");
        auto name = std::string(trim(rest.substr(0, eq)));
        tree.regions_.insert_or_assign(
            name, Region::parse(rest.substr(eq + 1), tree.regions_));
      } else if (keyword == "node") {
        if (open) throw fail("nested node");
        auto parts = split(rest, ' ');
        if (parts.size() != 2 || (parts[1] != "boxes" && parts[1] != "cases")) {
          throw fail("expected 'node <id> boxes|cases'");
        }
        raw.emplace_back();
        open = &raw.back();
        open->node.id = parts[0];
        open->node.kind = parts[1] == "boxes" ? NodeKind::Boxes : NodeKind::Cases;
      } else if (!open) {
        throw fail("'" + keyword + "' outside a node");
      } else if (keyword == "end") {
        open = nullptr;
      } else if (keyword == "revs") {
        for (const auto& p : split(rest, ' ')) {
          if (!p.empty()) open->revs.push_back(parse_point(p));
        }
      } else if (keyword == "slot") {
        open->node.slots.push_back(Region::parse(rest, tree.regions_));
      } else if (keyword == "box") {
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw fail("expected 'box <region> : <threat>'");
        open->node.slots.push_back(Region::parse(rest.substr(0, colon), tree.regions_));
        open->node.punishments.push_back(parse_threats(rest.substr(colon + 1)));
      } else if (keyword == "move") {
        for (const auto& step : split(rest, ' ')) {
          if (step.empty()) continue;
          auto arrow = step.find("->");
          if (arrow == std::string::npos) throw fail("bad move '" + step + "'");
          open->node.move.emplace_back(parse_point(step.substr(0, arrow)),
                                       parse_point(step.substr(arrow + 2)));
        }
      } else if (keyword == "punish") {
        open->node.punishments.push_back(parse_threats(rest));
      } else if (keyword == "punish-closure") {
        open->closures.push_back(parse_threats(rest));
      } else if (keyword == "child") {
        open->node.children.push_back(rest);
      } else {
        throw fail("unknown keyword '" + keyword + "'");
      }
    } catch (const UsageError& e) {
      const std::string what = e.what();
      if (what.rfind("proof tree line", 0) == 0) throw;
      throw fail(what);
    }
  }
  if (open) throw UsageError("proof tree: node '" + open->node.id + "' lacks 'end'");
  if (raw.empty()) throw UsageError("proof tree has no nodes");
  if (raw.front().revs.empty()) throw UsageError("proof tree root needs 'revs'");
  std::map<std::string, std::vector<ThreatSet>> closures;
  for (auto& r : raw) {
    if (closures.count(r.node.id)) {
      throw UsageError("proof tree: duplicate node '" + r.node.id + "'");
    }
    closures[r.node.id] = r.closures;
    r.node.revs = r.revs;
    tree.nodes_.push_back(std::move(r.node));
  }
  for (const auto& n : tree.nodes_) {
    for (const auto& c : n.children) (void)tree.node(c);
  }
  // Expand closures against judged positions once those are known.
  tree.propagate();
  for (auto& n : tree.nodes_) {
    const auto judged = n.judged_revs();
    const auto group = stabilizer(judged);
    for (const auto& base : closures[n.id]) {
      for (const auto& g : group) {
        auto image = transform(base, g);
        if (std::find(n.punishments.begin(), n.punishments.end(), image) ==
            n.punishments.end()) {
          n.punishments.push_back(image);
        }
      }
    }
  }
  return tree;
}

ProofTree ProofTree::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open proof tree '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const CaseNode& ProofTree::node(std::string_view id) const {
  for (const auto& n : nodes_) {
    if (n.id == id) return n;
  }
  throw UsageError("unknown proof tree node '" + std::string(id) + "'");
}

CaseNode& ProofTree::mutable_node(std::string_view id) {
  return const_cast<CaseNode&>(std::as_const(*this).node(id));
}

const CaseNode& ProofTree::child(const CaseNode& parent, std::size_t i) const {
  return node(parent.children.at(i));
}

void ProofTree::propagate() {
  std::set<std::string> visited;
  std::vector<CaseNode*> stack{&nodes_.front()};
  nodes_.front().depth = 0;
  while (!stack.empty()) {
    CaseNode* n = stack.back();
    stack.pop_back();
    if (!visited.insert(n->id).second) {
      throw UsageError("proof tree node '" + n->id + "' has two parents");
    }
    const auto judged = n->judged_revs();
    for (const auto& id : n->children) {
      auto& c = mutable_node(id);
      c.revs = judged;
      c.depth = n->judged_depth();
      stack.push_back(&c);
    }
  }
}

Verdict ProofTree::judge(const CaseNode& node, std::span<const Point> spies) const {
  const auto revs = node.judged_revs();
  if (node.has_move() && has_unguarded_pair(revs, spies)) {
    return {Verdict::Won, 0, identity_symmetry()};
  }
  const auto group = stabilizer(revs);
  std::vector<Point> image;
  for (std::size_t c = 0; c < node.children.size(); ++c) {
    const auto& slots = child(node, c).slots;
    for (const auto& g : group) {
      image.clear();
      for (Point p : spies) image.push_back(g.apply(p));
      if (match_slots(image, slots)) return {Verdict::Routed, c, g};
    }
  }
  for (std::size_t i = 0; i < node.punishments.size(); ++i) {
    if (!coverable(spies, node.punishments[i])) {
      return {Verdict::Punished, i, identity_symmetry()};
    }
  }
  return {};
}

void apply_mutation(ProofTree& tree, std::string_view spec) {
  auto parts = split(spec, ':');
  const auto& kind = parts[0];
  auto index = [&](std::size_t i, std::size_t fallback) -> std::size_t {
    return parts.size() > i ? static_cast<std::size_t>(parse_int(parts[i])) : fallback;
  };
  auto pick = [&](const char* default_node, std::size_t set,
                  std::size_t threat) -> std::pair<ThreatSet*, std::size_t> {
    auto& n = tree.mutable_node(parts.size() > 1 ? parts[1] : default_node);
    const auto s = index(2, set);
    if (s >= n.punishments.size()) throw UsageError("no punishment set " + std::to_string(s));
    const auto t = index(3, threat);
    if (t >= n.punishments[s].size()) throw UsageError("no threat " + std::to_string(t));
    return {&n.punishments[s], t};
  };
  if (kind == "shrink-deadline") {
    auto [set, t] = pick("case1-forced", 0, 0);
    if ((*set)[t].deadline == 0) throw UsageError("deadline already 0");
    --(*set)[t].deadline;
    sort_threats(*set);
  } else if (kind == "delete-threat") {
    auto [set, t] = pick("case2-forced", 0, 2);
    set->erase(set->begin() + static_cast<std::ptrdiff_t>(t));
  } else if (kind == "widen-b1") {
    tree.mutable_node("claim1").slots.at(0) = Region::rect(0, 3, 0, 3);
    tree.mutable_node("claims").slots.at(0) = Region::rect(0, 3, 0, 3);
  } else if (kind == "widen") {
    if (parts.size() != 4) throw UsageError("expected widen:<node>:<slot>:<region>");
    auto& n = tree.mutable_node(parts[1]);
    n.slots.at(index(2, 0)) = Region::parse(parts[3], tree.regions_);
  } else {
    throw UsageError("unknown mutation '" + std::string(spec) + "'");
  }
}

std::string NodeReport::line() const {
  return "node=" + id + " configs=" + std::to_string(configs) +
         " punished=" + std::to_string(punished) + " routed=" +
         std::to_string(routed) + " gaps=" + std::to_string(gaps);
}

std::uint64_t responses_per_config(const CaseNode& node) {
  if (!node.has_move()) return 1;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < node.slots.size(); ++i) n *= 9;
  return n;
}

namespace {

void check_structure(const ProofTree& tree, const CaseNode& node,
                     NodeReport& report) {
  const auto revs = node.judged_revs();
  for (auto [from, to] : node.move) {
    if (distance(from, to) > 1) {
      report.errors.push_back("illegal move " + to_string(from) + "->" + to_string(to));
    }
  }
  for (const auto& set : node.punishments) {
    if (!realizable(revs, set)) {
      report.errors.push_back("unrealizable: " + to_string(set));
    }
    for (const auto& t : set) {
      if (std::abs(t.vertex.x) > kThreatBox || std::abs(t.vertex.y) > kThreatBox ||
          node.judged_depth() + t.deadline > kMaxRounds) {
        report.errors.push_back("outside locality bounds: " + to_string(t));
      }
    }
  }
  for (std::size_t c = 0; c < node.children.size(); ++c) {
    if (tree.child(node, c).kind != NodeKind::Cases) {
      report.errors.push_back("child " + node.children[c] + " is not a cases node");
    }
  }
}

void verify_boxes(const ProofTree& tree, const CaseNode& node, NodeReport& report) {
  // Every configuration either leaves some box empty, which leaves that
  // box's single threat unguarded, or puts a distinct spy in every box,
  // which is what the child's slots say.
  const std::size_t boxes = node.slots.size();
  if (node.punishments.size() != boxes) {
    report.errors.push_back("boxes and threats differ in number");
    return;
  }
  const Region everywhere = Region::any();
  for (std::size_t i = 0; i < boxes; ++i) {
    const auto& set = node.punishments[i];
    if (set.size() != 1) {
      report.errors.push_back("box " + node.slots[i].text() + " needs one threat");
      continue;
    }
    std::vector<Point> cover;
    for (Point p : everywhere.points()) {
      if (covers(p, set)) cover.push_back(p);
    }
    if (cover != node.slots[i].points()) {
      report.errors.push_back("box " + node.slots[i].text() +
                              " is not the cover set of " + to_string(set));
    }
    for (std::size_t j = 0; j < i; ++j) {
      for (Point p : node.slots[i].points()) {
        if (node.slots[j].contains(p)) {
          report.errors.push_back("boxes overlap at " + to_string(p));
          break;
        }
      }
    }
  }
  constexpr std::size_t kSpies = 5;
  if (node.children.size() != 1) {
    report.errors.push_back("boxes node needs exactly one child");
  } else {
    const auto& slots = tree.child(node, 0).slots;
    bool ok = slots.size() == kSpies && boxes <= kSpies;
    for (std::size_t i = 0; ok && i < slots.size(); ++i) {
      ok = i < boxes ? slots[i] == node.slots[i] : slots[i].is_any();
    }
    if (!ok) report.errors.push_back("child slots are not the boxes plus wildcards");
  }
  // Count multisets of five positions (absent included) by inclusion and
  // exclusion over the empty boxes.
  const std::uint64_t n = everywhere.points().size();
  report.configs = choose(n + kSpies - 1, kSpies);
  std::int64_t signed_total = 0;
  for (std::uint32_t mask = 0; mask < (1u << boxes); ++mask) {
    std::uint64_t removed = 0;
    for (std::size_t i = 0; i < boxes; ++i) {
      if (mask >> i & 1) removed += node.slots[i].points().size();
    }
    const auto term = static_cast<std::int64_t>(choose(n - removed + kSpies - 1, kSpies));
    signed_total += (std::popcount(mask) % 2 == 0) ? term : -term;
  }
  const auto all_boxes_hit = static_cast<std::uint64_t>(signed_total);
  report.routed = all_boxes_hit;
  report.punished = report.configs - all_boxes_hit;
}

struct Tally {
  std::uint64_t configs = 0, punished = 0, routed = 0, gaps = 0;
  std::uint64_t first_gap_index = std::numeric_limits<std::uint64_t>::max();
  std::string first_gap;
};

std::string describe(std::span<const Point> points) {
  std::string out;
  for (Point p : points) {
    if (!out.empty()) out += " ";
    out += to_string(p);
  }
  return out;
}

void verify_cases(const ProofTree& tree, const CaseNode& node,
                  const VerifyOptions& options, NodeReport& report) {
  const std::size_t slots = node.slots.size();
  std::uint64_t total = 1;
  for (const auto& r : node.slots) total *= r.points().size();
  const unsigned threads = std::max(1u, options.threads);
  std::vector<Tally> tallies(threads);

  auto work = [&](unsigned worker) {
    Tally& tally = tallies[worker];
    std::vector<Point> config(slots), response(slots);
    std::vector<std::size_t> digit(slots);
    for (std::uint64_t index = worker; index < total; index += threads) {
      std::uint64_t rest = index;
      for (std::size_t i = slots; i-- > 0;) {
        const auto size = node.slots[i].points().size();
        config[i] = node.slots[i].points()[rest % size];
        rest /= size;
      }
      auto judge_one = [&](std::span<const Point> spies) {
        ++tally.configs;
        const auto verdict = tree.judge(node, spies);
        switch (verdict.kind) {
          case Verdict::Won:
          case Verdict::Punished:
            ++tally.punished;
            break;
          case Verdict::Routed:
            ++tally.routed;
            break;
          case Verdict::Gap:
            ++tally.gaps;
            if (index < tally.first_gap_index) {
              tally.first_gap_index = index;
              tally.first_gap = "spies " + describe(config);
              if (node.has_move()) tally.first_gap += " respond " + describe(spies);
            }
            break;
        }
      };
      if (!node.has_move()) {
        judge_one(config);
        continue;
      }
      // Odometer over each present spy's closed neighbourhood.
      std::fill(digit.begin(), digit.end(), 0);
      while (true) {
        for (std::size_t i = 0; i < slots; ++i) {
          const Point p = config[i];
          response[i] = p.is_absent()
                            ? p
                            : Point{p.x + static_cast<int>(digit[i] / 3) - 1,
                                    p.y + static_cast<int>(digit[i] % 3) - 1};
        }
        judge_one(response);
        std::size_t i = 0;
        for (; i < slots; ++i) {
          const std::size_t limit = config[i].is_absent() ? 1 : 9;
          if (++digit[i] < limit) break;
          digit[i] = 0;
        }
        if (i == slots) break;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  Tally merged;
  for (const auto& t : tallies) {
    merged.configs += t.configs;
    merged.punished += t.punished;
    merged.routed += t.routed;
    merged.gaps += t.gaps;
    if (t.first_gap_index < merged.first_gap_index) {
      merged.first_gap_index = t.first_gap_index;
      merged.first_gap = t.first_gap;
    }
  }
  report.configs = merged.configs;
  report.punished = merged.punished;
  report.routed = merged.routed;
  report.gaps = merged.gaps;
  report.first_gap = merged.first_gap;
}

}  // namespace

NodeReport verify_node(const ProofTree& tree, const CaseNode& node,
                       const VerifyOptions& options) {
  NodeReport report;
  report.id = node.id;
  check_structure(tree, node, report);
  if (node.kind == NodeKind::Boxes) {
    verify_boxes(tree, node, report);
  } else {
    verify_cases(tree, node, options, report);
  }
  return report;
}

bool TreeReport::pass() const {
  return !nodes.empty() &&
         std::all_of(nodes.begin(), nodes.end(),
                     [](const NodeReport& n) { return n.ok(); });
}

std::string TreeReport::text() const {
  std::string out;
  for (const auto& n : nodes) out += n.line() + "\n";
  for (const auto& n : nodes) {
    for (const auto& e : n.errors) out += "error node=" + n.id + " " + e + "\n";
    if (n.gaps) out += "gap node=" + n.id + " " + n.first_gap + "\n";
  }
  if (pass()) {
    out += "PASS nodes=" + std::to_string(nodes.size()) + "\n";
  } else {
    for (const auto& n : nodes) {
      if (!n.ok()) {
        out += "FAIL node=" + n.id + "\n";
        break;
      }
    }
  }
  return out;
}

TreeReport verify_tree(const ProofTree& tree, const VerifyOptions& options) {
  TreeReport report;
  std::vector<const CaseNode*> order{&tree.root()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t c = 0; c < order[i]->children.size(); ++c) {
      order.push_back(&tree.child(*order[i], c));
    }
  }
  for (const auto* n : order) report.nodes.push_back(verify_node(tree, *n, options));
  return report;
}

TreeReport verify_theorem85(const VerifyOptions& options) {
  return verify_tree(ProofTree::builtin(), options);
}

}  // namespace revspy::certify
