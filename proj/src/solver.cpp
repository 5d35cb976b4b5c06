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

#include "revspy/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>

#include "revspy/errors.hpp"

namespace revspy {

std::uint64_t default_state_budget() {
  if (const char* env = std::getenv("REVSPY_BUDGET")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return value;
  }
  return kDefaultStateBudget;
}

std::uint64_t multiset_count(std::uint64_t n, std::uint64_t m) {
  if (m == 0) return 1;
  if (n == 0) return 0;
  // C(n+m-1, m) computed incrementally; each prefix is itself a binomial.
  const std::uint64_t top = n + m - 1;
  const std::uint64_t choose = std::min(m, n - 1);
  unsigned __int128 value = 1;
  for (std::uint64_t i = 1; i <= choose; ++i) {
    value = value * (top - choose + i) / i;
    if (value > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(value);
}

std::uint64_t estimate_states(std::size_t n, std::uint32_t r, std::uint32_t s) {
  const std::uint64_t a = multiset_count(n, r);
  const std::uint64_t b = multiset_count(n, s);
  const unsigned __int128 total = static_cast<unsigned __int128>(a) * b * 2;
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(total);
}

MultisetIndex::MultisetIndex(std::size_t n, std::uint32_t m) : n_(n), m_(m) {
  const std::uint64_t count = multiset_count(n, m);
  if (count > std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("too many multisets to index", count);
  }
  count_ = static_cast<std::size_t>(count);
  const std::size_t top = n + m;
  binom_.assign(top + 1, std::vector<std::uint64_t>(m + 2, 0));
  for (std::size_t i = 0; i <= top; ++i) {
    binom_[i][0] = 1;
    for (std::size_t j = 1; j <= std::min<std::size_t>(i, m + 1); ++j) {
      binom_[i][j] = binom_[i - 1][j - 1] + (j <= i - 1 ? binom_[i - 1][j] : 0);
    }
  }

  flat_.resize(count_ * m_);
  if (m_ == 0) return;
  // Combinations c_0 < ... < c_{m-1} of [0, n+m-1) in colex order; the
  // multiset is a_i = c_i - i.
  const std::size_t universe = n + m - 1;
  std::vector<std::size_t> c(m_);
  for (std::uint32_t i = 0; i < m_; ++i) c[i] = i;
  for (std::size_t index = 0; index < count_; ++index) {
    for (std::uint32_t i = 0; i < m_; ++i) {
      flat_[index * m_ + i] = static_cast<Vertex>(c[i] - i);
    }
    std::uint32_t i = 0;
    while (i < m_) {
      const std::size_t limit = (i + 1 < m_) ? c[i + 1] : universe;
      if (c[i] + 1 < limit) break;
      ++i;
    }
    if (i == m_) break;
    ++c[i];
    for (std::uint32_t j = 0; j < i; ++j) c[j] = j;
  }
}

std::uint32_t MultisetIndex::rank(std::span<const Vertex> sorted) const {
  std::uint64_t r = 0;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += binom_[sorted[i] + i][i + 1];
  }
  return static_cast<std::uint32_t>(r);
}

std::span<const Vertex> MultisetIndex::unrank(std::uint32_t index) const {
  return {flat_.data() + static_cast<std::size_t>(index) * m_, m_};
}

std::vector<std::vector<Vertex>> successor_multisets(
    const Arena& arena, std::span<const Vertex> sorted) {
  // Agents sharing a vertex are interchangeable, so each group picks a
  // multiset from its closed neighbourhood.
  struct Group {
    Vertex at;
    std::uint32_t count;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    groups.push_back({sorted[i], static_cast<std::uint32_t>(j - i)});
    i = j;
  }

  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> current;
  current.reserve(sorted.size());
  auto place_group = [&](auto&& self, std::size_t g) -> void {
    if (g == groups.size()) {
      std::vector<Vertex> result = current;
      std::sort(result.begin(), result.end());
      out.push_back(std::move(result));
      return;
    }
    auto nb = arena.closed_neighborhood(groups[g].at);
    auto choose = [&](auto&& inner, std::uint32_t left,
                      std::size_t from) -> void {
      if (left == 0) {
        self(self, g + 1);
        return;
      }
      for (std::size_t t = from; t < nb.size(); ++t) {
        current.push_back(nb[t]);
        inner(inner, left - 1, t);
        current.pop_back();
      }
    };
    choose(choose, groups[g].count, 0);
  };
  place_group(place_group, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void build_successors(const Arena& arena, const MultisetIndex& index,
                      std::vector<std::size_t>& offsets,
                      std::vector<std::uint32_t>& data) {
  offsets.assign(1, 0);
  data.clear();
  std::vector<std::uint32_t> ranks;
  for (std::uint32_t i = 0; i < index.size(); ++i) {
    ranks.clear();
    for (const auto& next : successor_multisets(arena, index.unrank(i))) {
      ranks.push_back(index.rank(next));
    }
    std::sort(ranks.begin(), ranks.end());
    data.insert(data.end(), ranks.begin(), ranks.end());
    offsets.push_back(data.size());
  }
}

}  // namespace

std::span<const std::uint32_t> SolveTable::rev_successors(
    std::uint32_t ri) const {
  return {rev_succ_.data() + rev_succ_offsets_[ri],
          rev_succ_offsets_[ri + 1] - rev_succ_offsets_[ri]};
}

std::span<const std::uint32_t> SolveTable::spy_successors(
    std::uint32_t si) const {
  return {spy_succ_.data() + spy_succ_offsets_[si],
          spy_succ_offsets_[si + 1] - spy_succ_offsets_[si]};
}

bool SolveTable::unguarded(std::uint32_t ri, std::uint32_t si) const {
  const std::uint64_t* occ = occupancy_.data() + si * occupancy_words_;
  for (std::size_t m = meeting_offsets_[ri]; m < meeting_offsets_[ri + 1];
       ++m) {
    const Vertex v = meetings_[m];
    if (!(occ[v / 64] >> (v % 64) & 1)) return true;
  }
  return false;
}

bool SolveTable::rev_to_move_won(std::uint32_t ri, std::uint32_t si) const {
  return rev_stamp_[cell(ri, si)] != 0;
}

bool SolveTable::spy_to_move_won(std::uint32_t ri, std::uint32_t si) const {
  return spy_stamp_[cell(ri, si)] != 0;
}

std::uint32_t SolveTable::rev_to_move_stamp(std::uint32_t ri,
                                            std::uint32_t si) const {
  return rev_stamp_[cell(ri, si)];
}

std::uint32_t SolveTable::spy_to_move_stamp(std::uint32_t ri,
                                            std::uint32_t si) const {
  return spy_stamp_[cell(ri, si)];
}

bool SolveTable::placement_won(std::uint32_t ri) const {
  return placement_won_[ri] != 0;
}

Status SolveTable::status(const GameState& state) const {
  if (state.phase == Phase::RevPlacement) {
    return overall_rev_win_ ? Status::RevWin : Status::SpyWin;
  }
  if (state.revs.size() != r_) {
    throw PolicyError("state has " + std::to_string(state.revs.size()) +
                      " revolutionaries, table solved for " +
                      std::to_string(r_));
  }
  const std::uint32_t ri = rev_index_->rank(state.revs);
  if (state.phase == Phase::SpyPlacement) {
    return placement_won(ri) ? Status::RevWin : Status::SpyWin;
  }
  if (state.spies.size() != s_) {
    throw PolicyError("state has " + std::to_string(state.spies.size()) +
                      " spies, table solved for " + std::to_string(s_));
  }
  const std::uint32_t si = spy_index_->rank(state.spies);
  if (state.phase == Phase::RevToMove) {
    return unguarded(ri, si) || rev_to_move_won(ri, si) ? Status::RevWin
                                                        : Status::SpyWin;
  }
  return spy_to_move_won(ri, si) ? Status::RevWin : Status::SpyWin;
}

std::uint32_t SolveTable::stamp(const GameState& state) const {
  if (state.phase != Phase::RevToMove && state.phase != Phase::SpyToMove) {
    return 0;
  }
  const std::uint32_t ri = rev_index_->rank(state.revs);
  const std::uint32_t si = spy_index_->rank(state.spies);
  return state.phase == Phase::RevToMove ? rev_to_move_stamp(ri, si)
                                         : spy_to_move_stamp(ri, si);
}

std::vector<std::uint8_t> SolveTable::status_bits() const {
  std::vector<std::uint8_t> bits;
  bits.reserve(rev_stamp_.size() * 2 + 1);
  for (auto t : rev_stamp_) bits.push_back(t != 0);
  for (auto t : spy_stamp_) bits.push_back(t != 0);
  bits.push_back(overall_rev_win_);
  return bits;
}

std::shared_ptr<const SolveTable> solve(const Arena& arena, std::uint32_t r,
                                        std::uint32_t s, std::uint32_t k,
                                        const SolveOptions& options) {
  if (k == 0) throw UsageError("meeting size k must be >= 1");
  if (arena.size() == 0) throw UsageError("arena is empty");
  const std::uint64_t estimate = estimate_states(arena.size(), r, s);
  if (estimate > options.budget) {
    throw ResourceError("state estimate " + std::to_string(estimate) +
                            " exceeds budget " + std::to_string(options.budget),
                        estimate);
  }

  auto table = std::shared_ptr<SolveTable>(new SolveTable());
  table->arena_ = &arena;
  table->r_ = r;
  table->s_ = s;
  table->k_ = k;
  table->rev_index_ = std::make_unique<MultisetIndex>(arena.size(), r);
  table->spy_index_ = std::make_unique<MultisetIndex>(arena.size(), s);
  const auto& revs = *table->rev_index_;
  const auto& spies = *table->spy_index_;
  build_successors(arena, revs, table->rev_succ_offsets_, table->rev_succ_);
  build_successors(arena, spies, table->spy_succ_offsets_, table->spy_succ_);

  table->meeting_offsets_.assign(1, 0);
  for (std::uint32_t ri = 0; ri < revs.size(); ++ri) {
    auto m = revs.unrank(ri);
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      if (j - i >= k) table->meetings_.push_back(m[i]);
      i = j;
    }
    table->meeting_offsets_.push_back(table->meetings_.size());
  }
  const std::size_t words = (arena.size() + 63) / 64;
  table->occupancy_words_ = words;
  table->occupancy_.assign(spies.size() * words, 0);
  for (std::uint32_t si = 0; si < spies.size(); ++si) {
    for (Vertex v : spies.unrank(si)) {
      table->occupancy_[si * words + v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }

  const std::size_t cells = revs.size() * spies.size();
  table->rev_stamp_.assign(cells, 0);
  table->spy_stamp_.assign(cells, 0);
  std::vector<std::uint32_t> safe_replies(cells, 0);
  std::vector<std::uint64_t> queue;
  std::size_t head = 0;
  std::uint32_t clock = 0;

  std::optional<std::mt19937_64> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

  // Entries are cell * 2 + phase, phase 0 = rev-to-move, 1 = spy-to-move.
  auto mark_spy_to_move = [&](std::size_t c) {
    table->spy_stamp_[c] = ++clock;
    queue.push_back(c * 2 + 1);
  };
  auto mark_rev_to_move = [&](std::size_t c) {
    table->rev_stamp_[c] = ++clock;
    queue.push_back(c * 2);
  };

  std::vector<std::size_t> order(cells);
  for (std::size_t c = 0; c < cells; ++c) order[c] = c;
  if (rng) std::shuffle(order.begin(), order.end(), *rng);
  for (std::size_t c : order) {
    const auto ri = static_cast<std::uint32_t>(c / spies.size());
    const auto si = static_cast<std::uint32_t>(c % spies.size());
    std::uint32_t safe = 0;
    for (std::uint32_t next : table->spy_successors(si)) {
      if (!table->unguarded(ri, next)) ++safe;
    }
    safe_replies[c] = safe;
    if (safe == 0) mark_spy_to_move(c);
  }

  std::vector<std::uint32_t> scratch;
  auto maybe_shuffled = [&](std::span<const std::uint32_t> list) {
    scratch.assign(list.begin(), list.end());
    if (rng) std::shuffle(scratch.begin(), scratch.end(), *rng);
    return std::span<const std::uint32_t>(scratch);
  };

  while (head < queue.size()) {
    const std::uint64_t entry = queue[head++];
    ++table->stats_.worklist_pops;
    const std::size_t c = entry / 2;
    const auto ri = static_cast<std::uint32_t>(c / spies.size());
    const auto si = static_cast<std::uint32_t>(c % spies.size());
    // One-team moves are reversible, so successor lists double as
    // predecessor lists.
    if (entry & 1) {
      for (std::uint32_t prev : maybe_shuffled(table->rev_successors(ri))) {
        const std::size_t pc = table->cell(prev, si);
        if (table->rev_stamp_[pc] == 0 && !table->unguarded(prev, si)) {
          mark_rev_to_move(pc);
        }
      }
    } else {
      for (std::uint32_t prev : maybe_shuffled(table->spy_successors(si))) {
        const std::size_t pc = table->cell(ri, prev);
        if (table->spy_stamp_[pc] != 0) continue;
        if (--safe_replies[pc] == 0) mark_spy_to_move(pc);
      }
    }
  }

  table->placement_won_.assign(revs.size(), 0);
  for (std::uint32_t ri = 0; ri < revs.size(); ++ri) {
    bool all = true;
    for (std::uint32_t si = 0; si < spies.size() && all; ++si) {
      all = table->unguarded(ri, si) || table->rev_to_move_won(ri, si);
    }
    table->placement_won_[ri] = all;
    if (all) table->overall_rev_win_ = true;
  }
  table->stats_.states = cells * 2;
  table->stats_.rev_win_states = clock;
  return table;
}

bool rev_wins(const Arena& arena, std::uint32_t r, std::uint32_t s,
              std::uint32_t k, const SolveOptions& options) {
  return solve(arena, r, s, k, options)->rev_wins();
}

SigmaBracket splitting_bounds(std::size_t vertex_count, std::uint32_t r,
                              std::uint32_t k) {
  const auto n = static_cast<std::uint32_t>(vertex_count);
  SigmaBracket b;
  b.lo = std::min(n, r / k);
  b.hi = r + 1 > k ? std::min(n, r - k + 1) : 0;
  return b;
}

SigmaResult sigma(const Arena& arena, std::uint32_t r, std::uint32_t k,
                  const SolveOptions& options) {
  if (k == 0) throw UsageError("meeting size k must be >= 1");
  SigmaResult result;
  result.bracket = splitting_bounds(arena.size(), r, k);
  if (r < k) {
    result.lo = result.hi = 0;
    return result;
  }
  const auto n = static_cast<std::uint32_t>(arena.size());
  const std::uint32_t ceiling = std::max(result.bracket.hi, n);
  result.lo = result.bracket.lo;
  result.hi = ceiling;
  for (std::uint32_t s = result.bracket.lo; s <= ceiling; ++s) {
    try {
      auto table = solve(arena, r, s, k, options);
      result.states += table->stats().states;
      const bool revs = table->rev_wins();
      result.trials.emplace_back(s, revs);
      if (!revs) {
        result.lo = result.hi = s;
        return result;
      }
      result.lo = s + 1;
    } catch (const ResourceError& e) {
      result.hi = std::max(result.lo, result.bracket.hi);
      result.note = e.what();
      return result;
    }
  }
  return result;
}

namespace {

class TablePolicyBase : public Policy {
 public:
  explicit TablePolicyBase(std::shared_ptr<const SolveTable> table)
      : table_(std::move(table)) {}

 protected:
  void check(const GameState& state) const {
    if (state.arena == nullptr || state.arena->size() != table_->arena().size()) {
      throw PolicyError("state arena does not match the solved arena");
    }
    if (!state.revs.empty() && state.revs.size() != table_->r()) {
      throw PolicyError("revolutionary count differs from the solved table");
    }
    if (!state.spies.empty() && state.spies.size() != table_->s()) {
      throw PolicyError("spy count differs from the solved table");
    }
  }
  std::shared_ptr<const SolveTable> table_;
};

class SpyTablePolicy final : public TablePolicyBase {
 public:
  using TablePolicyBase::TablePolicyBase;
  std::string name() const override { return "solver-spy"; }

  std::vector<Vertex> place(const GameState& state,
                            std::size_t count) override {
    check(state);
    if (count != table_->s()) throw PolicyError("spy count mismatch");
    const auto& t = *table_;
    const std::uint32_t ri = t.rev_index().rank(state.revs);
    std::optional<std::uint32_t> pick;
    std::uint32_t best_stamp = 0;
    std::optional<std::uint32_t> stall;
    for (std::uint32_t si = 0; si < t.spy_index().size(); ++si) {
      if (t.unguarded(ri, si)) continue;
      if (!t.rev_to_move_won(ri, si)) {
        pick = si;
        break;
      }
      if (!stall || t.rev_to_move_stamp(ri, si) > best_stamp) {
        stall = si;
        best_stamp = t.rev_to_move_stamp(ri, si);
      }
    }
    const std::uint32_t si = pick ? *pick : stall.value_or(0);
    auto chosen = t.spy_index().unrank(si);
    return {chosen.begin(), chosen.end()};
  }

  JointMove move(const GameState& state) override {
    check(state);
    const auto& t = *table_;
    const std::uint32_t ri = t.rev_index().rank(state.revs);
    const std::uint32_t si = t.spy_index().rank(state.spies);
    std::optional<std::uint32_t> pick;
    std::optional<std::uint32_t> stall;
    std::uint32_t best_stamp = 0;
    for (std::uint32_t next : t.spy_successors(si)) {
      if (t.unguarded(ri, next)) continue;
      if (!t.rev_to_move_won(ri, next)) {
        pick = next;
        break;
      }
      if (!stall || t.rev_to_move_stamp(ri, next) > best_stamp) {
        stall = next;
        best_stamp = t.rev_to_move_stamp(ri, next);
      }
    }
    const std::uint32_t next = pick ? *pick : stall.value_or(si);
    return align_move(t.arena(), state.spies, t.spy_index().unrank(next));
  }
};

class RevTablePolicy final : public TablePolicyBase {
 public:
  using TablePolicyBase::TablePolicyBase;
  std::string name() const override { return "solver-rev"; }

  std::vector<Vertex> place(const GameState& state,
                            std::size_t count) override {
    check(state);
    if (count != table_->r()) throw PolicyError("revolutionary count mismatch");
    const auto& t = *table_;
    std::uint32_t ri = 0;
    for (std::uint32_t i = 0; i < t.rev_index().size(); ++i) {
      if (t.placement_won(i)) {
        ri = i;
        break;
      }
    }
    auto chosen = t.rev_index().unrank(ri);
    return {chosen.begin(), chosen.end()};
  }

  JointMove move(const GameState& state) override {
    check(state);
    const auto& t = *table_;
    const std::uint32_t ri = t.rev_index().rank(state.revs);
    const std::uint32_t si = t.spy_index().rank(state.spies);
    std::optional<std::uint32_t> pick;
    std::uint32_t best_stamp = 0;
    for (std::uint32_t next : t.rev_successors(ri)) {
      const std::uint32_t stamp = t.spy_to_move_stamp(next, si);
      if (stamp != 0 && (!pick || stamp < best_stamp)) {
        pick = next;
        best_stamp = stamp;
      }
    }
    const std::uint32_t next = pick.value_or(ri);
    return align_move(t.arena(), state.revs, t.rev_index().unrank(next));
  }
};

}  // namespace

std::unique_ptr<Policy> extract_policy(std::shared_ptr<const SolveTable> table,
                                       Team team) {
  if (!table) throw UsageError("extract_policy needs a solved table");
  if (team == Team::Spy) return std::make_unique<SpyTablePolicy>(std::move(table));
  return std::make_unique<RevTablePolicy>(std::move(table));
}

}  // namespace revspy
