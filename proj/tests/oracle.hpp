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

// Test-only reference implementations, deliberately naive and independent
// of the library's solver.

#include <map>
#include <set>
#include <vector>

#include "revspy/arena.hpp"
#include "revspy/engine.hpp"

namespace revspy::oracle {

inline void all_multisets(std::size_t n, std::uint32_t m, Vertex from,
                          std::vector<Vertex>& current,
                          std::vector<std::vector<Vertex>>& out) {
  if (current.size() == m) {
    out.push_back(current);
    return;
  }
  for (Vertex v = from; v < n; ++v) {
    current.push_back(v);
    all_multisets(n, m, v, current, out);
    current.pop_back();
  }
}

inline std::vector<std::vector<Vertex>> all_multisets(std::size_t n,
                                                      std::uint32_t m) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> current;
  all_multisets(n, m, 0, current, out);
  return out;
}

/// Every multiset reachable by moving each agent to itself or a neighbour,
/// by plain Cartesian product.
inline std::set<std::vector<Vertex>> one_move(const Arena& a,
                                              const std::vector<Vertex>& from) {
  std::set<std::vector<Vertex>> out;
  std::vector<Vertex> cur(from.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == from.size()) {
      auto sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      out.insert(sorted);
      return;
    }
    cur[i] = from[i];
    self(self, i + 1);
    for (Vertex w : a.neighbors(from[i])) {
      cur[i] = w;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline bool meeting_unguarded(const std::vector<Vertex>& revs,
                              const std::vector<Vertex>& spies,
                              std::uint32_t k) {
  std::map<Vertex, std::uint32_t> count;
  for (Vertex v : revs) ++count[v];
  for (auto [v, c] : count) {
    if (c >= k && std::find(spies.begin(), spies.end(), v) == spies.end()) {
      return true;
    }
  }
  return false;
}

/// Value iteration to the least fixed point on explicit maps.
inline bool brute_force_rev_wins(const Arena& a, std::uint32_t r,
                                 std::uint32_t s, std::uint32_t k) {
  using Key = std::pair<std::vector<Vertex>, std::vector<Vertex>>;
  const auto revs = all_multisets(a.size(), r);
  const auto spies = all_multisets(a.size(), s);
  std::map<Key, bool> rev_turn;
  std::map<Key, bool> spy_turn;
  for (const auto& R : revs) {
    for (const auto& S : spies) {
      rev_turn[{R, S}] = meeting_unguarded(R, S, k);
      spy_turn[{R, S}] = false;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& R : revs) {
      for (const auto& S : spies) {
        bool& st = spy_turn[{R, S}];
        if (!st) {
          bool all = true;
          for (const auto& S2 : one_move(a, S)) {
            if (!rev_turn[{R, S2}]) {
              all = false;
              break;
            }
          }
          if (all) st = changed = true;
        }
        bool& rt = rev_turn[{R, S}];
        if (!rt) {
          for (const auto& R2 : one_move(a, R)) {
            if (spy_turn[{R2, S}]) {
              rt = changed = true;
              break;
            }
          }
        }
      }
    }
  }
  for (const auto& R : revs) {
    bool all = true;
    for (const auto& S : spies) {
      if (!rev_turn[{R, S}]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

inline std::uint32_t brute_force_sigma(const Arena& a, std::uint32_t r,
                                       std::uint32_t k) {
  for (std::uint32_t s = 0;; ++s) {
    if (!brute_force_rev_wins(a, r, s, k)) return s;
  }
}

}  // namespace revspy::oracle
