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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "revspy/arena.hpp"

namespace revspy {

enum class Phase { RevPlacement, SpyPlacement, RevToMove, SpyToMove };
enum class Team { Rev, Spy };

char team_letter(Team team);

/// Positions of both teams. Agents are anonymous: each team is a sorted
/// multiset, so two states with the same occupancy compare equal.
struct GameState {
  const Arena* arena = nullptr;
  std::vector<Vertex> revs;
  std::vector<Vertex> spies;
  Phase phase = Phase::RevPlacement;
  std::uint32_t round = 0;

  static GameState initial(const Arena& arena);
  /// A state after spy placement or a spy move: revolutionaries to move.
  static GameState rev_to_move(const Arena& arena, std::vector<Vertex> revs,
                               std::vector<Vertex> spies,
                               std::uint32_t round = 1);
  static GameState spy_to_move(const Arena& arena, std::vector<Vertex> revs,
                               std::vector<Vertex> spies,
                               std::uint32_t round = 1);

  Team mover() const;
  const std::vector<Vertex>& moving_team() const;

  bool operator==(const GameState& other) const;
};

/// One target per agent of the moving team, aligned with the team's sorted
/// order. During placement the targets are the chosen positions.
struct JointMove {
  std::vector<Vertex> targets;
  bool operator==(const JointMove&) const = default;
};

/// Lazily enumerates the joint moves of the side to move, skipping moves
/// whose resulting multiset has already been produced.
class JointMoveStream {
 public:
  explicit JointMoveStream(const GameState& state);
  std::optional<JointMove> next();

 private:
  struct VectorHash {
    std::size_t operator()(const std::vector<Vertex>& v) const;
  };
  const Arena* arena_;
  std::vector<Vertex> from_;
  std::vector<std::size_t> digit_;
  bool done_ = false;
  std::unordered_set<std::vector<Vertex>, VectorHash> seen_;
};

std::vector<JointMove> legal_joint_moves(const GameState& state);

/// Smallest vertex holding at least k revolutionaries and no spy.
std::optional<Vertex> unguarded_meeting(std::span<const Vertex> revs,
                                        std::span<const Vertex> spies,
                                        std::uint32_t k);

/// Size of the largest unguarded meeting (0 when none).
std::uint32_t largest_unguarded_meeting(std::span<const Vertex> revs,
                                        std::span<const Vertex> spies);

/// Advances the state by one ply. Placement plies accept any positions of
/// the right count; movement plies require every target to be the agent's
/// vertex or a neighbour.
GameState apply(const GameState& state, const JointMove& move);

/// Deterministic team strategy. Implementations may keep private history
/// between calls; one instance serves one match.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  /// Called once before a match; randomized policies derive their streams
  /// from the seed.
  virtual void reset(std::uint64_t seed) { (void)seed; }
  /// Positions for `count` agents. Called in RevPlacement for the rev
  /// team and in SpyPlacement for the spy team.
  virtual std::vector<Vertex> place(const GameState& state,
                                    std::size_t count) = 0;
  virtual JointMove move(const GameState& state) = 0;
  /// Free-form remarks since the last call (e.g. clamped targets); play()
  /// copies them into the trace.
  virtual std::vector<std::string> take_notes() { return {}; }
};

enum class OutcomeKind { RevWin, RoundLimit, Forfeit };

struct Outcome {
  OutcomeKind kind = OutcomeKind::RoundLimit;
  Vertex vertex = 0;        // RevWin
  Team forfeiting = Team::Rev;  // Forfeit
  std::uint32_t round = 0;
  std::string detail;
};

struct TraceEntry {
  std::uint32_t round;
  Team team;
  std::vector<Vertex> positions;
};

struct Trace {
  std::vector<TraceEntry> entries;
  Outcome outcome;
  /// Largest unguarded meeting seen after any spy ply.
  std::uint32_t max_unguarded = 0;
  std::vector<std::string> notes;
};

inline constexpr std::uint32_t kDefaultMaxRounds = 200;

struct MatchConfig {
  std::uint32_t r = 0;
  std::uint32_t s = 0;
  std::uint32_t k = 2;
  std::uint32_t max_rounds = kDefaultMaxRounds;
  std::uint64_t seed = 0;
  /// Keep going after a rev win (used by harnesses that measure the
  /// worst meeting over a fixed number of rounds).
  bool continue_after_win = false;
  bool record_entries = true;
};

Trace play(const Arena& arena, const MatchConfig& config, Policy& rev_policy,
           Policy& spy_policy);

/// Aligns a target multiset with the sorted agents in `from`: returns a
/// JointMove whose i-th target is within one step of from[i]. Throws
/// PolicyError when no such assignment exists.
JointMove align_move(const Arena& arena, std::span<const Vertex> from,
                     std::span<const Vertex> to);

/// `round=<n> team=<R|S> pos=<...>` lines then `outcome=...`.
std::string format_trace(const Trace& trace, const Arena& arena);
std::string format_outcome(const Outcome& outcome, const Arena& arena);
std::string format_positions(std::span<const Vertex> positions,
                             const Arena& arena);

}  // namespace revspy
