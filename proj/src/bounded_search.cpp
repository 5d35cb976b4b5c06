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
#include <unordered_map>

#include "revspy/errors.hpp"
#include "revspy/solver.hpp"

namespace revspy {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<Vertex>& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Vertex x : v) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

/// Alternating depth-limited search. Spies are kept in a fixed labelled
/// order when regions are given (regions are per spy), otherwise sorted.
class BoundedSearch {
 public:
  BoundedSearch(const Arena& arena, std::uint32_t k,
                const std::optional<std::vector<std::vector<Vertex>>>& regions,
                const BoundedSearchOptions& options)
      : arena_(arena), k_(k), options_(options) {
    if (regions) {
      allowed_.resize(regions->size());
      for (std::size_t i = 0; i < regions->size(); ++i) {
        allowed_[i].assign(arena.size(), 0);
        for (Vertex v : (*regions)[i]) {
          arena.check_vertex(v);
          allowed_[i][v] = 1;
        }
      }
    }
  }

  bool rev_to_move(const std::vector<Vertex>& revs,
                   const std::vector<Vertex>& spies, std::uint32_t remaining,
                   std::uint32_t depth) {
    if (unguarded_meeting(revs, spies, k_)) return true;
    if (remaining == 0) return false;

    auto key = make_key(revs, spies, remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    count_node();

    bool result = false;
    std::optional<std::vector<Vertex>> hinted;
    if (options_.rev_hint) {
      hinted = options_.rev_hint(depth);
      if (hinted) {
        std::sort(hinted->begin(), hinted->end());
        if (hinted->size() == revs.size() && reachable(revs, *hinted) &&
            spy_to_move(*hinted, spies, remaining - 1, depth)) {
          result = true;
        }
      }
    }
    if (!result) {
      for (const auto& next : successor_multisets(arena_, revs)) {
        if (hinted && next == *hinted) continue;
        if (spy_to_move(next, spies, remaining - 1, depth)) {
          result = true;
          break;
        }
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  // True when every spy reply leaves an unguarded meeting or a state the
  // revolutionaries win with `remaining` more rounds.
  bool spy_to_move(const std::vector<Vertex>& revs,
                   const std::vector<Vertex>& spies, std::uint32_t remaining,
                   std::uint32_t depth) {
    count_node();
    if (remaining == 0) return !can_guard_all(revs, spies);

    bool all_lose = true;
    for_each_reply(spies, [&](const std::vector<Vertex>& reply) {
      if (unguarded_meeting(revs, reply, k_)) return true;
      if (rev_to_move(revs, reply, remaining, depth + 1)) return true;
      all_lose = false;
      return false;
    });
    return all_lose;
  }

  // Exact one-move check: can distinct spies each step onto a distinct
  // meeting vertex?
  bool can_guard_all(const std::vector<Vertex>& revs,
                     const std::vector<Vertex>& spies) {
    std::vector<Vertex> meetings;
    for (std::size_t i = 0; i < revs.size();) {
      std::size_t j = i;
      while (j < revs.size() && revs[j] == revs[i]) ++j;
      if (j - i >= k_) meetings.push_back(revs[i]);
      i = j;
    }
    if (meetings.size() > spies.size()) return false;
    std::vector<std::size_t> owner(spies.size(), meetings.size());
    std::vector<char> seen;
    auto reach = [&](std::size_t spy, Vertex v) {
      if (!allowed_.empty() && !allowed_[spy][v]) return false;
      return spies[spy] == v || arena_.adjacent(spies[spy], v);
    };
    auto augment = [&](auto&& self, std::size_t m) -> bool {
      for (std::size_t j = 0; j < spies.size(); ++j) {
        if (seen[j] || !reach(j, meetings[m])) continue;
        seen[j] = 1;
        if (owner[j] == meetings.size() || self(self, owner[j])) {
          owner[j] = m;
          return true;
        }
      }
      return false;
    };
    for (std::size_t m = 0; m < meetings.size(); ++m) {
      seen.assign(spies.size(), 0);
      if (!augment(augment, m)) return false;
    }
    return true;
  }

  // Calls visit(reply) for each distinct reply until it returns false.
  template <class F>
  void for_each_reply(const std::vector<Vertex>& spies, F&& visit) {
    if (allowed_.empty()) {
      for (auto& reply : successor_multisets(arena_, spies)) {
        if (!visit(reply)) return;
      }
      return;
    }
    std::vector<std::vector<Vertex>> options(spies.size());
    for (std::size_t i = 0; i < spies.size(); ++i) {
      for (Vertex v : arena_.closed_neighborhood(spies[i])) {
        if (allowed_[i][v]) options[i].push_back(v);
      }
      if (options[i].empty()) return;  // the spy cannot comply at all
    }
    std::vector<std::size_t> digit(spies.size(), 0);
    std::vector<Vertex> reply(spies.size());
    while (true) {
      for (std::size_t i = 0; i < spies.size(); ++i) {
        reply[i] = options[i][digit[i]];
      }
      if (!visit(reply)) return;
      std::size_t i = spies.size();
      while (i > 0) {
        --i;
        if (++digit[i] < options[i].size()) break;
        digit[i] = 0;
        if (i == 0) return;
      }
      if (spies.empty()) return;
    }
  }

  bool reachable(const std::vector<Vertex>& from,
                 const std::vector<Vertex>& to) const {
    try {
      (void)align_move(arena_, from, to);
      return true;
    } catch (const PolicyError&) {
      return false;
    }
  }

  std::vector<Vertex> make_key(const std::vector<Vertex>& revs,
                               const std::vector<Vertex>& spies,
                               std::uint32_t remaining) const {
    std::vector<Vertex> key;
    key.reserve(revs.size() + spies.size() + 1);
    key.push_back(remaining);
    key.insert(key.end(), revs.begin(), revs.end());
    key.insert(key.end(), spies.begin(), spies.end());
    return key;
  }

  void count_node() {
    if (++nodes_ > options_.node_limit) {
      throw ResourceError("bounded search exceeded its node limit", nodes_);
    }
  }

  const Arena& arena_;
  std::uint32_t k_;
  const BoundedSearchOptions& options_;
  std::vector<std::vector<char>> allowed_;
  std::unordered_map<std::vector<Vertex>, bool, KeyHash> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

bool bounded_rev_wins(
    const GameState& state, std::uint32_t k, std::uint32_t horizon,
    const std::optional<std::vector<std::vector<Vertex>>>& spy_regions,
    const BoundedSearchOptions& options) {
  if (state.arena == nullptr) throw UsageError("state has no arena");
  if (k == 0) throw UsageError("meeting size k must be >= 1");
  if (state.phase != Phase::RevToMove) {
    throw UsageError("bounded_rev_wins starts from a rev-to-move state");
  }
  if (spy_regions && spy_regions->size() != state.spies.size()) {
    throw UsageError("one region per spy is required");
  }
  BoundedSearch search(*state.arena, k, spy_regions, options);
  return search.rev_to_move(state.revs, state.spies, horizon, 0);
}

}  // namespace revspy
