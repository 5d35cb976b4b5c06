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

#include "revspy/engine.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "revspy/errors.hpp"

namespace revspy {

char team_letter(Team team) { return team == Team::Rev ? 'R' : 'S'; }

GameState GameState::initial(const Arena& arena) {
  GameState state;
  state.arena = &arena;
  return state;
}

GameState GameState::rev_to_move(const Arena& arena, std::vector<Vertex> revs,
                                 std::vector<Vertex> spies,
                                 std::uint32_t round) {
  GameState state;
  state.arena = &arena;
  for (Vertex v : revs) arena.check_vertex(v);
  for (Vertex v : spies) arena.check_vertex(v);
  std::sort(revs.begin(), revs.end());
  std::sort(spies.begin(), spies.end());
  state.revs = std::move(revs);
  state.spies = std::move(spies);
  state.phase = Phase::RevToMove;
  state.round = round;
  return state;
}

GameState GameState::spy_to_move(const Arena& arena, std::vector<Vertex> revs,
                                 std::vector<Vertex> spies,
                                 std::uint32_t round) {
  GameState state = rev_to_move(arena, std::move(revs), std::move(spies), round);
  state.phase = Phase::SpyToMove;
  return state;
}

Team GameState::mover() const {
  return phase == Phase::RevPlacement || phase == Phase::RevToMove ? Team::Rev
                                                                   : Team::Spy;
}

const std::vector<Vertex>& GameState::moving_team() const {
  return mover() == Team::Rev ? revs : spies;
}

bool GameState::operator==(const GameState& other) const {
  return arena == other.arena && revs == other.revs && spies == other.spies &&
         phase == other.phase && round == other.round;
}

std::size_t JointMoveStream::VectorHash::operator()(
    const std::vector<Vertex>& v) const {
  std::size_t h = 1469598103934665603ull;
  for (Vertex x : v) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

JointMoveStream::JointMoveStream(const GameState& state)
    : arena_(state.arena) {
  if (state.phase != Phase::RevToMove && state.phase != Phase::SpyToMove) {
    throw UsageError("legal_joint_moves needs a movement phase");
  }
  from_ = state.moving_team();
  digit_.assign(from_.size(), 0);
}

std::optional<JointMove> JointMoveStream::next() {
  while (!done_) {
    JointMove move;
    move.targets.resize(from_.size());
    for (std::size_t i = 0; i < from_.size(); ++i) {
      move.targets[i] = arena_->closed_neighborhood(from_[i])[digit_[i]];
    }
    // Advance the odometer, last agent fastest.
    std::size_t i = from_.size();
    while (i > 0) {
      --i;
      if (++digit_[i] < arena_->closed_neighborhood(from_[i]).size()) break;
      digit_[i] = 0;
      if (i == 0) done_ = true;
    }
    if (from_.empty()) done_ = true;

    std::vector<Vertex> result = move.targets;
    std::sort(result.begin(), result.end());
    if (seen_.insert(std::move(result)).second) return move;
  }
  return std::nullopt;
}

std::vector<JointMove> legal_joint_moves(const GameState& state) {
  JointMoveStream stream(state);
  std::vector<JointMove> moves;
  while (auto move = stream.next()) moves.push_back(std::move(*move));
  return moves;
}

std::optional<Vertex> unguarded_meeting(std::span<const Vertex> revs,
                                        std::span<const Vertex> spies,
                                        std::uint32_t k) {
  if (k == 0) throw UsageError("meeting size must be >= 1");
  // Inputs are usually sorted; copy so unsorted input also works.
  std::vector<Vertex> r(revs.begin(), revs.end());
  std::vector<Vertex> s(spies.begin(), spies.end());
  std::sort(r.begin(), r.end());
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < r.size();) {
    std::size_t j = i;
    while (j < r.size() && r[j] == r[i]) ++j;
    if (j - i >= k && !std::binary_search(s.begin(), s.end(), r[i])) {
      return r[i];
    }
    i = j;
  }
  return std::nullopt;
}

std::uint32_t largest_unguarded_meeting(std::span<const Vertex> revs,
                                        std::span<const Vertex> spies) {
  std::vector<Vertex> r(revs.begin(), revs.end());
  std::vector<Vertex> s(spies.begin(), spies.end());
  std::sort(r.begin(), r.end());
  std::sort(s.begin(), s.end());
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < r.size();) {
    std::size_t j = i;
    while (j < r.size() && r[j] == r[i]) ++j;
    if (!std::binary_search(s.begin(), s.end(), r[i])) {
      best = std::max<std::uint32_t>(best, static_cast<std::uint32_t>(j - i));
    }
    i = j;
  }
  return best;
}

GameState apply(const GameState& state, const JointMove& move) {
  const Arena& arena = *state.arena;
  GameState next = state;
  for (std::size_t i = 0; i < move.targets.size(); ++i) {
    if (move.targets[i] >= arena.size()) {
      throw RuleViolation("agent " + std::to_string(i) + " targets vertex " +
                              std::to_string(move.targets[i]) +
                              " outside the arena",
                          i);
    }
  }
  std::vector<Vertex> sorted = move.targets;
  std::sort(sorted.begin(), sorted.end());

  switch (state.phase) {
    case Phase::RevPlacement:
      next.revs = std::move(sorted);
      next.phase = Phase::SpyPlacement;
      return next;
    case Phase::SpyPlacement:
      next.spies = std::move(sorted);
      next.phase = Phase::RevToMove;
      next.round = 1;
      return next;
    case Phase::RevToMove:
    case Phase::SpyToMove: {
      const auto& from = state.moving_team();
      if (move.targets.size() != from.size()) {
        throw RuleViolation("joint move has " +
                                std::to_string(move.targets.size()) +
                                " targets for " + std::to_string(from.size()) +
                                " agents",
                            std::min(move.targets.size(), from.size()));
      }
      for (std::size_t i = 0; i < from.size(); ++i) {
        if (move.targets[i] != from[i] &&
            !arena.adjacent(from[i], move.targets[i])) {
          throw RuleViolation(
              std::string(1, team_letter(state.mover())) + " agent " +
                  std::to_string(i) + " cannot move from " +
                  arena.label(from[i]) + " to " + arena.label(move.targets[i]),
              i);
        }
      }
      if (state.phase == Phase::RevToMove) {
        next.revs = std::move(sorted);
        next.phase = Phase::SpyToMove;
      } else {
        next.spies = std::move(sorted);
        next.phase = Phase::RevToMove;
        ++next.round;
      }
      return next;
    }
  }
  return next;
}

namespace {

struct Forfeit {
  Team team;
  std::string why;
};

template <class F>
std::optional<Forfeit> guarded(Team team, F&& body) {
  try {
    body();
  } catch (const RuleViolation& e) {
    return Forfeit{team, e.what()};
  } catch (const PolicyError& e) {
    return Forfeit{team, e.what()};
  } catch (const UsageError& e) {
    return Forfeit{team, e.what()};
  }
  return std::nullopt;
}

}  // namespace

Trace play(const Arena& arena, const MatchConfig& config, Policy& rev_policy,
           Policy& spy_policy) {
  Trace trace;
  rev_policy.reset(config.seed);
  spy_policy.reset(config.seed);
  GameState state = GameState::initial(arena);
  bool won = false;

  auto collect_notes = [&](Policy& policy) {
    for (auto& note : policy.take_notes()) {
      trace.notes.push_back("round=" + std::to_string(state.round) + " " +
                            policy.name() + ": " + note);
    }
  };
  auto finish_forfeit = [&](const Forfeit& f) {
    if (won) return;
    trace.outcome.kind = OutcomeKind::Forfeit;
    trace.outcome.forfeiting = f.team;
    trace.outcome.round = state.round;
    trace.outcome.detail = f.why;
  };
  auto check_meeting = [&]() {
    auto size = largest_unguarded_meeting(state.revs, state.spies);
    trace.max_unguarded = std::max(trace.max_unguarded, size);
    if (won) return;
    if (auto v = unguarded_meeting(state.revs, state.spies, config.k)) {
      won = true;
      trace.outcome.kind = OutcomeKind::RevWin;
      trace.outcome.vertex = *v;
      trace.outcome.round = state.round == 0 ? 0 : state.round - 1;
    }
  };

  auto ply = [&](Policy& policy, Team team, std::size_t count) {
    return guarded(team, [&] {
      std::uint32_t round = state.round;
      JointMove move;
      if (state.phase == Phase::RevPlacement ||
          state.phase == Phase::SpyPlacement) {
        move.targets = policy.place(state, count);
        if (move.targets.size() != count) {
          throw RuleViolation("placed " + std::to_string(move.targets.size()) +
                                  " agents, expected " + std::to_string(count),
                              0);
        }
        round = 0;
      } else {
        move = policy.move(state);
      }
      collect_notes(policy);
      state = apply(state, move);
      if (config.record_entries) {
        trace.entries.push_back(
            {round, team, team == Team::Rev ? state.revs : state.spies});
      }
    });
  };

  if (auto f = ply(rev_policy, Team::Rev, config.r)) {
    finish_forfeit(*f);
    return trace;
  }
  if (auto f = ply(spy_policy, Team::Spy, config.s)) {
    finish_forfeit(*f);
    return trace;
  }
  check_meeting();
  if (won && !config.continue_after_win) return trace;

  while (state.round <= config.max_rounds) {
    if (auto f = ply(rev_policy, Team::Rev, config.r)) {
      finish_forfeit(*f);
      return trace;
    }
    if (auto f = ply(spy_policy, Team::Spy, config.s)) {
      finish_forfeit(*f);
      return trace;
    }
    check_meeting();
    if (won && !config.continue_after_win) return trace;
  }
  if (!won) {
    trace.outcome.kind = OutcomeKind::RoundLimit;
    trace.outcome.round = config.max_rounds;
  }
  return trace;
}

JointMove align_move(const Arena& arena, std::span<const Vertex> from,
                     std::span<const Vertex> to) {
  if (from.size() != to.size()) {
    throw PolicyError("align_move: team sizes differ");
  }
  const std::size_t n = from.size();
  // Kuhn's augmenting paths; staying put is tried first so identical
  // multisets align to the identity move.
  std::vector<std::vector<std::size_t>> options(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (to[j] == from[i]) options[i].push_back(j);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (to[j] != from[i] && arena.adjacent(from[i], to[j])) {
        options[i].push_back(j);
      }
    }
  }
  std::vector<std::size_t> owner(n, n);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j : options[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (owner[j] == n || self(self, owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    visited.assign(n, 0);
    if (!augment(augment, i)) {
      throw PolicyError("no legal joint move reaches the requested positions");
    }
  }
  JointMove move;
  move.targets.resize(n);
  for (std::size_t j = 0; j < n; ++j) move.targets[owner[j]] = to[j];
  return move;
}

std::string format_positions(std::span<const Vertex> positions,
                             const Arena& arena) {
  std::string out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) out += ',';
    out += arena.label(positions[i]);
  }
  return out;
}

std::string format_outcome(const Outcome& outcome, const Arena& arena) {
  switch (outcome.kind) {
    case OutcomeKind::RevWin:
      return "revwin@" + arena.label(outcome.vertex);
    case OutcomeKind::RoundLimit:
      return "round-limit";
    case OutcomeKind::Forfeit:
      return std::string("forfeit:") + team_letter(outcome.forfeiting);
  }
  return "ongoing";
}

std::string format_trace(const Trace& trace, const Arena& arena) {
  std::ostringstream out;
  for (const auto& entry : trace.entries) {
    out << "round=" << entry.round << " team=" << team_letter(entry.team)
        << " pos=" << format_positions(entry.positions, arena) << '\n';
  }
  out << "outcome=" << format_outcome(trace.outcome, arena) << '\n';
  for (const auto& note : trace.notes) out << "note " << note << '\n';
  return out.str();
}

}  // namespace revspy
