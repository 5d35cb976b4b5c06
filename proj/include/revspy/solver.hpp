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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revspy/arena.hpp"
#include "revspy/engine.hpp"

namespace revspy {

inline constexpr std::uint64_t kDefaultStateBudget = 50'000'000;

/// kDefaultStateBudget unless REVSPY_BUDGET is set.
std::uint64_t default_state_budget();

/// C(n+m-1, m), saturating at UINT64_MAX.
std::uint64_t multiset_count(std::uint64_t n, std::uint64_t m);

/// Number of positional states the solver would tabulate.
std::uint64_t estimate_states(std::size_t n, std::uint32_t r, std::uint32_t s);

/// Dense colex ranking of the size-m multisets over [0, n).
class MultisetIndex {
 public:
  MultisetIndex(std::size_t n, std::uint32_t m);

  std::size_t size() const { return count_; }
  std::uint32_t multiplicity() const { return m_; }
  std::uint32_t rank(std::span<const Vertex> sorted) const;
  std::span<const Vertex> unrank(std::uint32_t index) const;

 private:
  std::size_t n_;
  std::uint32_t m_;
  std::size_t count_;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<Vertex> flat_;
};

/// Distinct multisets reachable from `sorted` in one team move.
std::vector<std::vector<Vertex>> successor_multisets(
    const Arena& arena, std::span<const Vertex> sorted);

struct SolveOptions {
  std::uint64_t budget = default_state_budget();
  /// When set, the worklist is seeded and drained in a shuffled order.
  std::optional<std::uint64_t> shuffle_seed;
};

enum class Status { RevWin, SpyWin };

/// Result of the retrograde fixed point for one (arena, r, s, k).
///
/// Spy-to-move states are won by the revolutionaries when every spy reply
/// either leaves an unguarded k-meeting or reaches a won rev-to-move state;
/// rev-to-move states are won when some rev move reaches a won spy-to-move
/// state. The least fixed point is computed by counting down the remaining
/// safe replies of every spy-to-move state; everything outside it is a spy
/// win.
class SolveTable {
 public:
  struct Stats {
    std::uint64_t states = 0;
    std::uint64_t worklist_pops = 0;
    std::uint64_t rev_win_states = 0;
  };

  const Arena& arena() const { return *arena_; }
  std::uint32_t r() const { return r_; }
  std::uint32_t s() const { return s_; }
  std::uint32_t k() const { return k_; }
  const Stats& stats() const { return stats_; }

  /// Winner of the whole game including both placement plies.
  bool rev_wins() const { return overall_rev_win_; }

  /// Status of any state with r revs and s spies placed (or being placed).
  Status status(const GameState& state) const;

  /// Order in which a won state entered the fixed point (0 = never).
  std::uint32_t stamp(const GameState& state) const;

  /// Positional status bits only, for comparing tables.
  std::vector<std::uint8_t> status_bits() const;

  // Indexed access used by policies.
  const MultisetIndex& rev_index() const { return *rev_index_; }
  const MultisetIndex& spy_index() const { return *spy_index_; }
  std::span<const std::uint32_t> rev_successors(std::uint32_t ri) const;
  std::span<const std::uint32_t> spy_successors(std::uint32_t si) const;
  bool unguarded(std::uint32_t ri, std::uint32_t si) const;
  bool rev_to_move_won(std::uint32_t ri, std::uint32_t si) const;
  bool spy_to_move_won(std::uint32_t ri, std::uint32_t si) const;
  std::uint32_t rev_to_move_stamp(std::uint32_t ri, std::uint32_t si) const;
  std::uint32_t spy_to_move_stamp(std::uint32_t ri, std::uint32_t si) const;
  /// True when every spy placement against `ri` loses.
  bool placement_won(std::uint32_t ri) const;

 private:
  friend std::shared_ptr<const SolveTable> solve(const Arena&, std::uint32_t,
                                                 std::uint32_t, std::uint32_t,
                                                 const SolveOptions&);
  SolveTable() = default;
  std::size_t cell(std::uint32_t ri, std::uint32_t si) const {
    return static_cast<std::size_t>(ri) * spy_index_->size() + si;
  }

  const Arena* arena_ = nullptr;
  std::uint32_t r_ = 0, s_ = 0, k_ = 0;
  std::unique_ptr<MultisetIndex> rev_index_;
  std::unique_ptr<MultisetIndex> spy_index_;
  std::vector<std::size_t> rev_succ_offsets_;
  std::vector<std::uint32_t> rev_succ_;
  std::vector<std::size_t> spy_succ_offsets_;
  std::vector<std::uint32_t> spy_succ_;
  std::vector<std::size_t> meeting_offsets_;
  std::vector<Vertex> meetings_;
  std::size_t occupancy_words_ = 0;
  std::vector<std::uint64_t> occupancy_;
  std::vector<std::uint32_t> rev_stamp_;  // rev-to-move, 0 = not won
  std::vector<std::uint32_t> spy_stamp_;  // spy-to-move, 0 = not won
  std::vector<std::uint8_t> placement_won_;
  bool overall_rev_win_ = false;
  Stats stats_;
};

/// Solves G(arena, r, s, k). Throws ResourceError when the state estimate
/// exceeds options.budget.
std::shared_ptr<const SolveTable> solve(const Arena& arena, std::uint32_t r,
                                        std::uint32_t s, std::uint32_t k,
                                        const SolveOptions& options = {});

bool rev_wins(const Arena& arena, std::uint32_t r, std::uint32_t s,
              std::uint32_t k, const SolveOptions& options = {});

/// The trivial bracket min{|V|, floor(r/k)} <= sigma <= min{|V|, r-k+1}.
struct SigmaBracket {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
};
SigmaBracket splitting_bounds(std::size_t vertex_count, std::uint32_t r,
                              std::uint32_t k);

struct SigmaResult {
  /// Exact when lo == hi.
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
  SigmaBracket bracket;
  std::vector<std::pair<std::uint32_t, bool>> trials;  // (s, rev wins)
  std::uint64_t states = 0;
  std::string note;

  bool exact() const { return lo == hi; }
  std::uint32_t value() const { return lo; }
};

/// Minimum number of spies that win, searched upward from the lower bound.
/// Spy wins are monotone in s: an extra spy can shadow an existing one.
SigmaResult sigma(const Arena& arena, std::uint32_t r, std::uint32_t k,
                  const SolveOptions& options = {});

/// Deterministic policy read off a solved table. Spies pick the
/// smallest-rank reply that stays outside the fixed point; revolutionaries
/// pick the reply with the smallest stamp, so every won game ends within
/// the number of tabulated states.
std::unique_ptr<Policy> extract_policy(std::shared_ptr<const SolveTable> table,
                                       Team team);

struct BoundedSearchOptions {
  /// Rev multiset to try first after `depth` rounds. Only affects speed.
  std::function<std::optional<std::vector<Vertex>>(std::uint32_t depth)>
      rev_hint;
  std::uint64_t node_limit = 20'000'000;
};

/// Can the revolutionaries force an unguarded k-meeting, observed after a
/// spy reply, within `horizon` rounds from a rev-to-move state? With
/// `spy_regions`, spy i (in the state's sorted order) may only occupy
/// vertices of spy_regions[i]. Horizon 0 is the plain meeting check.
bool bounded_rev_wins(
    const GameState& state, std::uint32_t k, std::uint32_t horizon,
    const std::optional<std::vector<std::vector<Vertex>>>& spy_regions =
        std::nullopt,
    const BoundedSearchOptions& options = {});

}  // namespace revspy
