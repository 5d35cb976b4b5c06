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

// Revolutionaries that play the proof tree: the single formation and its
// replicated form.

#include <algorithm>
#include <utility>

#include "revspy/errors.hpp"
#include "revspy/strategies.hpp"

namespace revspy {

namespace {

using certify::Point;

constexpr int kSpacing = 30;
constexpr std::size_t kFormationSize = 8;
constexpr std::size_t kMaxEngaged = 5;

Point point_of(const Arena& a, Vertex v) {
  auto c = a.coords(v);
  return {c[0], c[1]};
}

bool in_engagement_box(Point p, Point offset) {
  return std::abs(p.x - offset.x) <= certify::kEngagement &&
         std::abs(p.y - offset.y) <= certify::kEngagement;
}

/// One formation of eight revolutionaries following the proof tree.
/// Coordinates inside the tree are "tree coordinates"; `frame_` maps
/// offset-relative arena coordinates onto them.
class FormationPlayer {
 public:
  FormationPlayer(certify::ProofTree tree, Point offset)
      : tree_(std::move(tree)), offset_(offset) {}

  std::vector<Vertex> placement(const Arena& a) const {
    if (!a.has_coords() || a.dimension() != 2) {
      throw UsageError("formation needs a two-dimensional lattice box");
    }
    const int e = certify::kEngagement;
    for (Point corner : {Point{-e, -e}, Point{e, e}}) {
      if (!a.vertex_at(std::vector<int>{offset_.x + corner.x, offset_.y + corner.y})) {
        throw UsageError("arena does not contain the engagement box around " +
                         certify::to_string(offset_));
      }
    }
    std::vector<Vertex> out;
    for (Point p : tree_.root().revs) out.push_back(vertex(a, p + offset_));
    return out;
  }

  /// Called with the spy placement, before the first step.
  void start(const Arena& a, std::span<const Vertex> spies) {
    spies_.reset(spies);
    relevant_.clear();
    for (Vertex v : spies) relevant_.push_back(in_engagement_box(point_of(a, v), offset_));
    revs_ = tree_.root().revs;
    frame_ = certify::identity_symmetry();
    node_ = &tree_.root();
    awaiting_ = false;
    plan_.clear();
    plan_step_ = 0;
    stalled_ = false;
    started_ = true;
  }

  std::vector<Vertex> step(const Arena& a, std::span<const Vertex> spies) {
    if (!started_) throw PolicyError("formation stepped before start");
    spies_.observe(a, spies);
    if (plan_step_ < plan_.size()) {
      revs_ = plan_[plan_step_++];
      return actual(a);
    }
    if (stalled_) return actual(a);

    std::vector<Point> seen;
    for (std::size_t i = 0; i < spies_.size(); ++i) {
      if (relevant_[i]) seen.push_back(frame_.apply(point_of(a, spies_.positions()[i]) - offset_));
    }
    if (seen.size() > kMaxEngaged) {
      return stall(a, "more than five spies engaged; holding");
    }
    const certify::CaseNode* current = awaiting_ ? node_ : &tree_.root();
    for (std::size_t guard = 0; guard <= tree_.nodes().size(); ++guard) {
      auto mine = revs_;
      std::sort(mine.begin(), mine.end());
      if (mine != current->judged_revs()) {
        throw PolicyError("formation out of step with proof tree node " + current->id);
      }
      const auto verdict = tree_.judge(*current, seen);
      if (verdict.kind == certify::Verdict::Punished) {
        const auto& threats = current->punishments[verdict.index];
        plan_ = certify::punish(revs_, threats);
        plan_step_ = 0;
        notes_.push_back("commit node=" + current->id + " threats=" +
                         certify::to_string(to_arena(threats)));
        if (plan_.empty()) return stall(a, "empty plan");
        revs_ = plan_[plan_step_++];
        return actual(a);
      }
      if (verdict.kind != certify::Verdict::Routed) {
        return stall(a, "no verdict at node " + current->id + "; holding");
      }
      const auto& g = verdict.symmetry;
      frame_ = g.compose(frame_);
      for (auto& p : seen) p = g.apply(p);
      for (auto& p : revs_) p = g.apply(p);
      current = &tree_.child(*current, verdict.index);
      awaiting_ = false;
      if (current->has_move()) {
        for (auto [from, to] : current->move) {
          auto it = std::find(revs_.begin(), revs_.end(), from);
          if (it == revs_.end()) throw PolicyError("proof tree move from an empty vertex");
          *it = to;
        }
        node_ = current;
        awaiting_ = true;
        notes_.push_back("node=" + current->id + " frame=" + std::string(frame_.name));
        return actual(a);
      }
    }
    return stall(a, "proof tree routing did not settle");
  }

  std::vector<std::string> take_notes() { return std::exchange(notes_, {}); }

 private:
  static Vertex vertex(const Arena& a, Point p) {
    auto v = a.vertex_at(std::vector<int>{p.x, p.y});
    if (!v) throw PolicyError("formation left the arena at " + certify::to_string(p));
    return *v;
  }

  Point to_arena(Point p) const { return frame_.inverse().apply(p) + offset_; }

  certify::ThreatSet to_arena(const certify::ThreatSet& threats) const {
    certify::ThreatSet out;
    for (const auto& t : threats) {
      out.push_back({to_arena(t.vertex), t.deadline,
                     {to_arena(t.pair[0]), to_arena(t.pair[1])}});
    }
    return out;
  }

  std::vector<Vertex> actual(const Arena& a) const {
    std::vector<Vertex> out;
    for (Point p : revs_) out.push_back(vertex(a, to_arena(p)));
    return out;
  }

  std::vector<Vertex> stall(const Arena& a, const std::string& why) {
    stalled_ = true;
    notes_.push_back(why);
    return actual(a);
  }

  certify::ProofTree tree_;
  Point offset_;
  certify::Symmetry frame_ = certify::identity_symmetry();
  const certify::CaseNode* node_ = nullptr;
  bool awaiting_ = false;
  bool started_ = false;
  bool stalled_ = false;
  std::vector<Point> revs_;
  LabeledTeam spies_;
  std::vector<char> relevant_;
  std::vector<std::vector<Point>> plan_;
  std::size_t plan_step_ = 0;
  std::vector<std::string> notes_;
};

class Theorem85Policy final : public Policy {
 public:
  Theorem85Policy(certify::ProofTree tree, Point offset) : player_(std::move(tree), offset) {}
  std::string name() const override { return "thm85"; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    if (count != kFormationSize) {
      throw UsageError("thm85: needs exactly 8 revolutionaries, got " + std::to_string(count));
    }
    started_ = false;
    return player_.placement(*state.arena);
  }

  JointMove move(const GameState& state) override {
    if (!started_) {
      player_.start(*state.arena, state.spies);
      started_ = true;
    }
    return align_move(*state.arena, state.revs, player_.step(*state.arena, state.spies));
  }

  std::vector<std::string> take_notes() override { return player_.take_notes(); }

 private:
  FormationPlayer player_;
  bool started_ = false;
};

class ReplicatedPolicy final : public Policy {
 public:
  std::string name() const override { return "replicated"; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    const std::size_t groups = count / kFormationSize;
    if (groups == 0) throw UsageError("replicated: needs at least 8 revolutionaries");
    groups_ = groups;
    player_.reset();
    stalled_ = false;
    layout_.clear();
    std::vector<Vertex> out;
    for (std::size_t i = 1; i <= groups; ++i) {
      FormationPlayer p(certify::ProofTree::builtin(), offset(i));
      auto group = p.placement(*state.arena);
      layout_.push_back(group);
      out.insert(out.end(), group.begin(), group.end());
    }
    auto home = state.arena->vertex_at(std::vector<int>{kSpacing, 0});
    while (out.size() < count) out.push_back(*home);
    leftovers_ = count - groups * kFormationSize;
    return out;
  }

  JointMove move(const GameState& state) override {
    const Arena& a = *state.arena;
    if (!player_ && !stalled_) {
      for (std::size_t i = 1; i <= groups_; ++i) {
        std::size_t inside = 0;
        for (Vertex v : state.spies) inside += in_engagement_box(point_of(a, v), offset(i));
        if (inside <= kMaxEngaged) {
          active_ = i - 1;
          player_ = std::make_unique<FormationPlayer>(certify::ProofTree::builtin(), offset(i));
          player_->start(a, state.spies);
          notes_.push_back("engage box=" + std::to_string(i) + " spies=" +
                           std::to_string(inside));
          break;
        }
      }
      if (!player_) {
        stalled_ = true;
        notes_.push_back("no engagement box with at most five spies; holding");
      }
    }
    if (stalled_) return {state.revs};
    layout_[active_] = player_->step(a, state.spies);
    for (auto& n : player_->take_notes()) notes_.push_back(std::move(n));
    std::vector<Vertex> all;
    for (const auto& g : layout_) all.insert(all.end(), g.begin(), g.end());
    auto home = a.vertex_at(std::vector<int>{kSpacing, 0});
    all.insert(all.end(), leftovers_, *home);
    return align_move(a, state.revs, all);
  }

  std::vector<std::string> take_notes() override { return std::exchange(notes_, {}); }

 private:
  static Point offset(std::size_t i) { return {kSpacing * static_cast<int>(i), 0}; }

  std::size_t groups_ = 0;
  std::size_t leftovers_ = 0;
  std::size_t active_ = 0;
  bool stalled_ = false;
  std::vector<std::vector<Vertex>> layout_;
  std::unique_ptr<FormationPlayer> player_;
  std::vector<std::string> notes_;
};

}  // namespace

std::unique_ptr<Policy> theorem85_policy(certify::ProofTree tree, certify::Point offset) {
  return std::make_unique<Theorem85Policy>(std::move(tree), offset);
}

std::unique_ptr<Policy> replicated_policy() { return std::make_unique<ReplicatedPolicy>(); }

}  // namespace revspy
