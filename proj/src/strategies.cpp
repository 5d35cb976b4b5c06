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

#include "revspy/strategies.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "revspy/errors.hpp"

namespace revspy {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

AgentRng::AgentRng(std::uint64_t seed, std::uint64_t stream)
    : engine_(split_seed(seed, stream)) {}

std::uint64_t AgentRng::below(std::uint64_t n) {
  if (n == 0) throw UsageError("AgentRng::below(0)");
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

void LabeledTeam::reset(std::span<const Vertex> positions) {
  positions_.assign(positions.begin(), positions.end());
}

void LabeledTeam::observe(const Arena& arena, std::span<const Vertex> positions) {
  positions_ = align_move(arena, positions_, positions).targets;
}

std::vector<Vertex> sorted_copy(std::span<const Vertex> v) {
  std::vector<Vertex> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr std::uint64_t kRevSalt = 0x5245;
constexpr std::uint64_t kSpySalt = 0x535059;

GameState placement_state(const Arena& arena, std::vector<Vertex> revs) {
  GameState s = GameState::initial(arena);
  s.revs = sorted_copy(revs);
  s.phase = Phase::SpyPlacement;
  return s;
}

/// Base with a note buffer.
class NotingPolicy : public Policy {
 public:
  std::vector<std::string> take_notes() override {
    return std::exchange(notes_, {});
  }

 protected:
  std::vector<std::string> notes_;
};

void require_lattice(const Arena& arena, int dimension, const char* who) {
  if (!arena.has_coords() || (dimension > 0 && arena.dimension() != dimension)) {
    throw UsageError(std::string(who) + " needs a lattice arena" +
                     (dimension > 0 ? " of dimension " + std::to_string(dimension) : ""));
  }
}

/// Coordinate range of the arena along each axis.
std::pair<std::vector<int>, std::vector<int>> coordinate_bounds(const Arena& arena) {
  const auto d = static_cast<std::size_t>(arena.dimension());
  std::vector<int> lo(d, std::numeric_limits<int>::max());
  std::vector<int> hi(d, std::numeric_limits<int>::min());
  for (Vertex v = 0; v < arena.size(); ++v) {
    auto c = arena.coords(v);
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], c[j]);
      hi[j] = std::max(hi[j], c[j]);
    }
  }
  return {lo, hi};
}

/// Moves each coordinate of `from` towards `target` by at most one,
/// clamped to the arena; returns the vertex and whether it fell short.
std::pair<Vertex, bool> step_towards(const Arena& arena, Vertex from,
                                     std::vector<int> target,
                                     const std::vector<int>& lo,
                                     const std::vector<int>& hi) {
  auto c = arena.coords(from);
  bool short_of = false;
  for (std::size_t j = 0; j < target.size(); ++j) {
    target[j] = std::clamp(target[j], lo[j], hi[j]);
    if (target[j] > c[j] + 1) {
      target[j] = c[j] + 1;
      short_of = true;
    } else if (target[j] < c[j] - 1) {
      target[j] = c[j] - 1;
      short_of = true;
    }
  }
  auto v = arena.vertex_at(target);
  if (!v) return {from, true};
  return {*v, short_of};
}

class FollowerSpies final : public NotingPolicy {
 public:
  FollowerSpies(std::vector<std::size_t> targets, bool automatic)
      : targets_(std::move(targets)), automatic_(automatic) {}
  std::string name() const override { return "follower"; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    const std::size_t r = state.revs.size();
    if (automatic_) {
      targets_.clear();
      for (std::size_t i = 0; i < std::min(count, r); ++i) targets_.push_back(i);
    }
    if (targets_.size() > count) {
      throw UsageError("follower: " + std::to_string(targets_.size()) +
                       " targets but only " + std::to_string(count) + " spies");
    }
    for (auto t : targets_) {
      if (t >= r) throw UsageError("follower: no revolutionary " + std::to_string(t));
    }
    count_ = count;
    revs_.reset(state.revs);
    return desired();
  }

  JointMove move(const GameState& state) override {
    revs_.observe(*state.arena, state.revs);
    return align_move(*state.arena, state.spies, desired());
  }

 private:
  std::vector<Vertex> desired() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < count_; ++i) {
      if (revs_.size() == 0) {
        out.push_back(0);
      } else {
        const std::size_t t = i < targets_.size() ? targets_[i]
                              : targets_.empty()  ? 0
                                                  : targets_[0];
        out.push_back(revs_.positions()[t]);
      }
    }
    return out;
  }

  std::vector<std::size_t> targets_;
  bool automatic_;
  std::size_t count_ = 0;
  LabeledTeam revs_;
};

class OrderStatisticSpies final : public NotingPolicy {
 public:
  explicit OrderStatisticSpies(std::uint32_t k) : k_(k) {
    if (k == 0) throw UsageError("orderstat: k must be positive");
  }
  std::string name() const override { return "orderstat"; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    require_lattice(*state.arena, 1, "orderstat");
    const std::size_t needed = state.revs.size() / k_;
    if (count < needed) {
      throw UsageError("orderstat: needs at least floor(r/k) = " +
                       std::to_string(needed) + " spies");
    }
    std::tie(lo_, hi_) = coordinate_bounds(*state.arena);
    mine_.clear();
    for (std::size_t i = 0; i < count; ++i) {
      mine_.push_back(*state.arena->vertex_at(std::vector<int>{target(state, i)}));
    }
    return mine_;
  }

  JointMove move(const GameState& state) override {
    for (std::size_t i = 0; i < mine_.size(); ++i) {
      const int want = target(state, i);
      auto [v, short_of] = step_towards(*state.arena, mine_[i], {want}, lo_, hi_);
      if (short_of) {
        notes_.push_back("clamped spy " + std::to_string(i) + " short of x=" +
                         std::to_string(want));
      }
      mine_[i] = v;
    }
    return align_move(*state.arena, state.spies, mine_);
  }

 private:
  /// Coordinate of x_(ik) for spy i (0-based), or the maximum for surplus.
  int target(const GameState& state, std::size_t i) const {
    std::vector<int> xs;
    for (Vertex v : state.revs) xs.push_back(state.arena->coords(v)[0]);
    if (xs.empty()) return lo_.empty() ? 0 : lo_[0];
    const std::size_t idx = std::min<std::size_t>((i + 1) * k_, xs.size());
    return order_statistic(xs, idx);
  }

  std::uint32_t k_;
  std::vector<Vertex> mine_;
  std::vector<int> lo_, hi_;
};

class MedianSpy final : public NotingPolicy {
 public:
  explicit MedianSpy(std::uint32_t k) : k_(k) {
    if (k == 0) throw UsageError("medianspy: k must be positive");
  }
  std::string name() const override { return "medianspy"; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    require_lattice(*state.arena, 0, "medianspy");
    if (state.revs.size() != 2 * k_ - 1) {
      throw UsageError("medianspy: needs exactly 2k-1 = " + std::to_string(2 * k_ - 1) +
                       " revolutionaries, got " + std::to_string(state.revs.size()));
    }
    std::tie(lo_, hi_) = coordinate_bounds(*state.arena);
    mine_.assign(count, *state.arena->vertex_at(centre(state)));
    return mine_;
  }

  JointMove move(const GameState& state) override {
    const auto c = centre(state);
    for (auto& v : mine_) {
      auto [next, short_of] = step_towards(*state.arena, v, c, lo_, hi_);
      if (short_of) notes_.push_back("clamped median spy");
      v = next;
    }
    return align_move(*state.arena, state.spies, mine_);
  }

 private:
  std::vector<int> centre(const GameState& state) const {
    const auto d = static_cast<std::size_t>(state.arena->dimension());
    std::vector<int> c(d);
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<int> xs;
      for (Vertex v : state.revs) xs.push_back(state.arena->coords(v)[j]);
      c[j] = order_statistic(xs, k_);
    }
    return c;
  }

  std::uint32_t k_;
  std::vector<Vertex> mine_;
  std::vector<int> lo_, hi_;
};

class SumCombinator final : public NotingPolicy {
 public:
  explicit SumCombinator(Partition parts) : parts_(std::move(parts)) {
    if (parts_.groups.empty()) throw UsageError("sum: empty partition");
    for (const auto& g : parts_.groups) {
      if (!g.policy) throw UsageError("sum: group without a policy");
    }
  }
  std::string name() const override { return "sum"; }

  void reset(std::uint64_t seed) override {
    for (std::size_t g = 0; g < parts_.groups.size(); ++g) {
      parts_.groups[g].policy->reset(split_seed(seed, g));
    }
  }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    std::size_t r = 0, s = 0;
    for (const auto& g : parts_.groups) {
      r += g.r;
      s += g.s;
    }
    if (r != state.revs.size() || s != count) {
      throw UsageError("sum: partition covers " + std::to_string(r) + " revs and " +
                       std::to_string(s) + " spies, game has " +
                       std::to_string(state.revs.size()) + " and " +
                       std::to_string(count));
    }
    revs_.reset(state.revs);
    spies_.assign(parts_.groups.size(), {});
    std::vector<Vertex> out;
    for (std::size_t g = 0; g < parts_.groups.size(); ++g) {
      auto& group = parts_.groups[g];
      auto sub = placement_state(*state.arena, group_revs(g));
      spies_[g] = group.policy->place(sub, group.s);
      collect(g);
      out.insert(out.end(), spies_[g].begin(), spies_[g].end());
    }
    return out;
  }

  JointMove move(const GameState& state) override {
    revs_.observe(*state.arena, state.revs);
    std::vector<Vertex> all;
    for (std::size_t g = 0; g < parts_.groups.size(); ++g) {
      auto sub = GameState::spy_to_move(*state.arena, group_revs(g),
                                        sorted_copy(spies_[g]), state.round);
      auto mv = parts_.groups[g].policy->move(sub);
      spies_[g] = apply(sub, mv).spies;
      collect(g);
      all.insert(all.end(), spies_[g].begin(), spies_[g].end());
    }
    return align_move(*state.arena, state.spies, all);
  }

 private:
  std::vector<Vertex> group_revs(std::size_t g) const {
    std::size_t start = 0;
    for (std::size_t i = 0; i < g; ++i) start += parts_.groups[i].r;
    const auto& p = revs_.positions();
    return sorted_copy(std::span(p).subspan(start, parts_.groups[g].r));
  }

  void collect(std::size_t g) {
    for (auto& n : parts_.groups[g].policy->take_notes()) {
      notes_.push_back("group " + std::to_string(g) + ": " + n);
    }
  }

  Partition parts_;
  LabeledTeam revs_;
  std::vector<std::vector<Vertex>> spies_;
};

class CompositeSpies final : public NotingPolicy {
 public:
  explicit CompositeSpies(std::uint32_t k) : k_(k) {}
  std::string name() const override { return "composite"; }
  void reset(std::uint64_t seed) override { seed_ = seed; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    const auto r = static_cast<std::uint32_t>(state.revs.size());
    if (k_ < 1 || 2 * k_ > r) {
      throw UsageError("composite: needs 1 <= k <= r/2 (r=" + std::to_string(r) +
                       ", k=" + std::to_string(k_) + ")");
    }
    const std::uint32_t followers = r - 2 * k_ + 1;
    if (count < followers + 1) {
      throw UsageError("composite: needs s >= r-2k+2 = " + std::to_string(followers + 1));
    }
    Partition parts;
    parts.groups.push_back({followers, followers, 1, follower_spies_default()});
    parts.groups.push_back({2 * k_ - 1, static_cast<std::uint32_t>(count) - followers,
                            k_, coordinatewise_orderstat_spy(k_)});
    inner_ = sum_combinator(std::move(parts));
    inner_->reset(seed_);
    auto out = inner_->place(state, count);
    pull();
    return out;
  }

  JointMove move(const GameState& state) override {
    auto mv = inner_->move(state);
    pull();
    return mv;
  }

 private:
  void pull() {
    for (auto& n : inner_->take_notes()) notes_.push_back(std::move(n));
  }
  std::uint32_t k_;
  std::uint64_t seed_ = 0;
  std::unique_ptr<Policy> inner_;
};

class PowerAdaptor final : public NotingPolicy {
 public:
  PowerAdaptor(std::unique_ptr<Policy> base, const Arena& base_arena, std::uint32_t n)
      : base_(std::move(base)), g_(&base_arena), n_(n) {
    if (n == 0) throw UsageError("power adaptor: n must be positive");
  }
  std::string name() const override { return "powerlift(" + base_->name() + ")"; }
  void reset(std::uint64_t seed) override { base_->reset(seed); }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    if (state.arena->size() != g_->size()) {
      throw UsageError("power adaptor: arena and base arena differ in size");
    }
    revs_.reset(state.revs);
    auto out = base_->place(placement_state(*g_, state.revs), count);
    pull();
    return out;
  }

  JointMove move(const GameState& state) override {
    const auto before = revs_.positions();
    try {
      revs_.observe(*state.arena, state.revs);
    } catch (const PolicyError&) {
      throw RuleViolation("revolutionary move is not legal in the power graph", 0);
    }
    const auto& after = revs_.positions();
    // Per-agent walks in G, padded by standing still at the end.
    std::vector<std::vector<Vertex>> walks;
    for (std::size_t i = 0; i < before.size(); ++i) {
      std::vector<Vertex> walk{before[i]};
      const auto d = g_->distance(before[i], after[i]);
      if (d > n_) throw RuleViolation("revolutionary jumped too far", i);
      Vertex at = before[i];
      for (auto left = d; left > 0; --left) {
        for (Vertex w : g_->neighbors(at)) {
          if (g_->distance(w, after[i]) == left - 1) {
            at = w;
            break;
          }
        }
        walk.push_back(at);
      }
      walk.resize(n_ + 1, after[i]);
      walks.push_back(std::move(walk));
    }
    std::vector<Vertex> spies = state.spies;
    for (std::uint32_t j = 1; j <= n_; ++j) {
      std::vector<Vertex> revs;
      for (const auto& w : walks) revs.push_back(w[j]);
      auto sub = GameState::spy_to_move(*g_, sorted_copy(revs), spies, state.round);
      spies = apply(sub, base_->move(sub)).spies;
      pull();
    }
    return align_move(*state.arena, state.spies, spies);
  }

 private:
  void pull() {
    for (auto& n : base_->take_notes()) notes_.push_back(std::move(n));
  }
  std::unique_ptr<Policy> base_;
  const Arena* g_;
  std::uint32_t n_;
  LabeledTeam revs_;
};

class GroupLift final : public NotingPolicy {
 public:
  GroupLift(std::unique_ptr<Policy> base, std::uint32_t a) : base_(std::move(base)), a_(a) {
    if (a == 0) throw UsageError("group lift: a must be positive");
  }
  std::string name() const override { return "grouplift(" + base_->name() + ")"; }
  void reset(std::uint64_t seed) override { base_->reset(seed); }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    auto out = base_->place(placement_state(*state.arena, scaled(state.revs)), count);
    pull();
    return out;
  }

  JointMove move(const GameState& state) override {
    auto sub = GameState::spy_to_move(*state.arena, scaled(state.revs), state.spies,
                                      state.round);
    auto mv = base_->move(sub);
    pull();
    return mv;
  }

 private:
  std::vector<Vertex> scaled(std::span<const Vertex> revs) const {
    std::vector<Vertex> out;
    for (Vertex v : revs) out.insert(out.end(), a_, v);
    return out;
  }
  void pull() {
    for (auto& n : base_->take_notes()) notes_.push_back(std::move(n));
  }
  std::unique_ptr<Policy> base_;
  std::uint32_t a_;
};

class ProjectionAdaptor final : public NotingPolicy {
 public:
  ProjectionAdaptor(std::unique_ptr<Policy> base, const Arena& factor,
                    std::size_t other, Factor which)
      : base_(std::move(base)), f_(&factor), other_(other), which_(which) {
    if (other == 0) throw UsageError("projection: empty other factor");
  }
  std::string name() const override { return "project(" + base_->name() + ")"; }
  void reset(std::uint64_t seed) override { base_->reset(seed); }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    if (state.arena->size() != f_->size() * other_) {
      throw UsageError("projection: arena is not the product of the given factor");
    }
    auto chosen = base_->place(GameState::initial(*f_), count);
    pull();
    std::vector<Vertex> out;
    for (Vertex v : chosen) out.push_back(lift(v));
    return out;
  }

  JointMove move(const GameState& state) override {
    auto sub = GameState::rev_to_move(*f_, project(state.revs), project(state.spies),
                                      state.round);
    auto mv = base_->move(sub);
    pull();
    for (auto& t : mv.targets) t = lift(t);
    return mv;
  }

 private:
  Vertex lift(Vertex v) const {
    return which_ == Factor::First ? static_cast<Vertex>(v * other_) : v;
  }
  std::vector<Vertex> project(std::span<const Vertex> vs) const {
    std::vector<Vertex> out;
    for (Vertex v : vs) {
      out.push_back(which_ == Factor::First ? static_cast<Vertex>(v / other_)
                                            : static_cast<Vertex>(v % f_->size()));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  void pull() {
    for (auto& n : base_->take_notes()) notes_.push_back(std::move(n));
  }
  std::unique_ptr<Policy> base_;
  const Arena* f_;
  std::size_t other_;
  Factor which_;
};

class RandomPolicy final : public Policy {
 public:
  std::string name() const override { return "random"; }
  void reset(std::uint64_t seed) override { seed_ = seed; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    salt_ = state.phase == Phase::RevPlacement ? kRevSalt : kSpySalt;
    rngs_.clear();
    for (std::size_t i = 0; i < count; ++i) rngs_.emplace_back(seed_, salt_ * 4096 + i);
    std::vector<Vertex> out;
    for (auto& rng : rngs_) out.push_back(static_cast<Vertex>(rng.below(state.arena->size())));
    return out;
  }

  JointMove move(const GameState& state) override {
    JointMove mv;
    const auto& team = state.moving_team();
    for (std::size_t i = 0; i < team.size(); ++i) {
      auto options = state.arena->closed_neighborhood(team[i]);
      mv.targets.push_back(options[rngs_[i].below(options.size())]);
    }
    return mv;
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t salt_ = 0;
  std::vector<AgentRng> rngs_;
};

class GreedyCrowding final : public Policy {
 public:
  std::string name() const override { return "greedy"; }
  void reset(std::uint64_t seed) override { seed_ = seed; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    rngs_.clear();
    for (std::size_t i = 0; i < count; ++i) rngs_.emplace_back(seed_, kRevSalt * 8192 + i);
    std::vector<Vertex> out;
    for (auto& rng : rngs_) out.push_back(static_cast<Vertex>(rng.below(state.arena->size())));
    return out;
  }

  JointMove move(const GameState& state) override {
    const Arena& a = *state.arena;
    const auto& revs = state.revs;
    // The team's most central member (smallest total distance).
    Vertex centre = revs.front();
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (Vertex u : revs) {
      std::uint64_t total = 0;
      for (Vertex v : revs) total += a.distance(u, v);
      if (total < best) {
        best = total;
        centre = u;
      }
    }
    JointMove mv;
    for (std::size_t i = 0; i < revs.size(); ++i) {
      auto options = a.closed_neighborhood(revs[i]);
      const auto roll = rngs_[i].below(10);
      if (roll < 2) {
        mv.targets.push_back(options[rngs_[i].below(options.size())]);
        continue;
      }
      Vertex target = centre;
      if (roll < 6) {
        // Nearest teammate at another vertex.
        std::uint32_t nearest = kInfiniteDistance;
        for (Vertex v : revs) {
          const auto d = a.distance(revs[i], v);
          if (v != revs[i] && d < nearest) {
            nearest = d;
            target = v;
          }
        }
      }
      Vertex step = revs[i];
      for (Vertex w : options) {
        if (a.distance(w, target) < a.distance(step, target)) step = w;
      }
      mv.targets.push_back(step);
    }
    return mv;
  }

 private:
  std::uint64_t seed_ = 0;
  std::vector<AgentRng> rngs_;
};

/// Vertices where two revolutionaries can meet next round.
std::vector<Vertex> one_round_meetings(const Arena& a, std::span<const Vertex> revs) {
  std::map<Vertex, int> reach;
  for (Vertex r : revs) {
    for (Vertex w : a.closed_neighborhood(r)) ++reach[w];
  }
  std::vector<Vertex> out;
  for (auto [v, c] : reach) {
    if (c >= 2) out.push_back(v);
  }
  return out;
}

/// Greedy one-round guard: each spy in turn takes the closed-neighbourhood
/// vertex that leaves the fewest next-round meeting points unwatched.
class GuardSpies : public Policy {
 public:
  std::string name() const override { return "guard"; }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    const Arena& a = *state.arena;
    auto meetings = one_round_meetings(a, state.revs);
    std::vector<Vertex> out;
    std::vector<char> watched(meetings.size(), 0);
    for (std::size_t i = 0; i < count; ++i) {
      Vertex best = state.revs.empty() ? 0 : state.revs[i % state.revs.size()];
      std::size_t gain = 0;
      for (Vertex m : meetings) {
        for (Vertex w : a.closed_neighborhood(m)) {
          std::size_t g = 0;
          for (std::size_t j = 0; j < meetings.size(); ++j) {
            if (!watched[j] && a.distance(w, meetings[j]) <= 1) ++g;
          }
          if (g > gain || (g == gain && g > 0 && w < best)) {
            gain = g;
            best = w;
          }
        }
      }
      for (std::size_t j = 0; j < meetings.size(); ++j) {
        if (a.distance(best, meetings[j]) <= 1) watched[j] = 1;
      }
      out.push_back(best);
    }
    return out;
  }

  JointMove move(const GameState& state) override {
    const Arena& a = *state.arena;
    auto meetings = one_round_meetings(a, state.revs);
    std::vector<Vertex> at = state.spies;
    auto unwatched = [&]() {
      std::size_t n = 0;
      for (Vertex m : meetings) {
        bool ok = false;
        for (Vertex s : at) {
          if (a.distance(s, m) <= 1) {
            ok = true;
            break;
          }
        }
        n += ok ? 0 : 1;
      }
      return n;
    };
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < at.size(); ++i) {
        Vertex best = at[i];
        std::size_t best_score = unwatched();
        for (Vertex w : a.closed_neighborhood(state.spies[i])) {
          at[i] = w;
          const auto score = unwatched();
          if (score < best_score) {
            best_score = score;
            best = w;
          }
        }
        at[i] = best;
      }
    }
    return {at};
  }
};

class TreeAdversary final : public GuardSpies {
 public:
  explicit TreeAdversary(certify::Point offset) : offset_(offset) {}
  std::string name() const override { return "tree"; }
  void reset(std::uint64_t seed) override { rng_ = AgentRng(seed, kSpySalt * 3); }

  std::vector<Vertex> place(const GameState& state, std::size_t count) override {
    const Arena& a = *state.arena;
    require_lattice(a, 2, "tree adversary");
    const auto tree = certify::ProofTree::builtin();
    const auto& node = tree.node(rng_.below(2) == 0 ? "case1" : "case2");
    const auto& g = certify::dihedral_group()[rng_.below(8)];
    std::vector<Vertex> out;
    for (const auto& slot : node.slots) {
      if (out.size() == count) break;
      const auto& pts = slot.points();
      const auto p = g.apply(pts[rng_.below(pts.size())]) + offset_;
      auto v = a.vertex_at(std::vector<int>{p.x, p.y});
      if (!v) throw UsageError("tree adversary: arena too small");
      out.push_back(*v);
    }
    while (out.size() < count) out.push_back(static_cast<Vertex>(rng_.below(a.size())));
    return out;
  }

 private:
  certify::Point offset_;
  AgentRng rng_{0, kSpySalt * 3};
};

}  // namespace

std::unique_ptr<Policy> follower_spies(std::vector<std::size_t> targets) {
  return std::make_unique<FollowerSpies>(std::move(targets), false);
}

std::unique_ptr<Policy> follower_spies_default() {
  return std::make_unique<FollowerSpies>(std::vector<std::size_t>{}, true);
}

std::unique_ptr<Policy> order_statistic_spies_path(std::uint32_t k) {
  return std::make_unique<OrderStatisticSpies>(k);
}

std::unique_ptr<Policy> coordinatewise_orderstat_spy(std::uint32_t k) {
  return std::make_unique<MedianSpy>(k);
}

std::unique_ptr<Policy> composite_zd_spies(std::uint32_t k) {
  return std::make_unique<CompositeSpies>(k);
}

std::unique_ptr<Policy> sum_combinator(Partition parts) {
  return std::make_unique<SumCombinator>(std::move(parts));
}

std::unique_ptr<Policy> power_adaptor(std::unique_ptr<Policy> base,
                                      const Arena& base_arena, std::uint32_t n) {
  return std::make_unique<PowerAdaptor>(std::move(base), base_arena, n);
}

std::unique_ptr<Policy> group_lift_spies(std::unique_ptr<Policy> base, std::uint32_t a) {
  return std::make_unique<GroupLift>(std::move(base), a);
}

std::unique_ptr<Policy> projection_rev_adaptor(std::unique_ptr<Policy> base,
                                               const Arena& factor_arena,
                                               std::size_t other_size, Factor which) {
  return std::make_unique<ProjectionAdaptor>(std::move(base), factor_arena, other_size,
                                             which);
}

std::unique_ptr<Policy> random_policy() { return std::make_unique<RandomPolicy>(); }

std::unique_ptr<Policy> greedy_crowding_revs() {
  return std::make_unique<GreedyCrowding>();
}

std::unique_ptr<Policy> guard_spies() { return std::make_unique<GuardSpies>(); }

std::unique_ptr<Policy> tree_adversary_spies(certify::Point offset) {
  return std::make_unique<TreeAdversary>(offset);
}

}  // namespace revspy
