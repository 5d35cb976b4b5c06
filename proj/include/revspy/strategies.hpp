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

// Policy catalogue: explicit spy and revolutionary strategies, the
// combinators that build new strategies from old ones, and simple harness
// opponents.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "revspy/arena.hpp"
#include "revspy/certify.hpp"
#include "revspy/engine.hpp"

namespace revspy {

/// Uniform integers from one mt19937_64 stream. Rejection sampling rather
/// than std distributions so sequences are identical across standard
/// libraries.
class AgentRng {
 public:
  AgentRng() = default;
  AgentRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// Mixes a run seed with a stream label (splitmix64 finaliser).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

/// Recovers agent identities from successive anonymous multisets by a
/// distance-one matching that prefers agents staying put.
class LabeledTeam {
 public:
  void reset(std::span<const Vertex> positions);
  /// Throws PolicyError when no agent-wise legal matching exists.
  void observe(const Arena& arena, std::span<const Vertex> positions);
  const std::vector<Vertex>& positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }

 private:
  std::vector<Vertex> positions_;
};

/// Sorted copy.
std::vector<Vertex> sorted_copy(std::span<const Vertex> v);

/// The i-th smallest element (1-based).
template <typename T>
T order_statistic(std::vector<T> values, std::size_t i) {
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(i - 1),
                   values.end());
  return values[i - 1];
}

// Spy strategies.

/// Spy i copies the revolutionary with label targets[i] (labels are the
/// sorted order at placement). Surplus spies copy targets[0]. Throws
/// UsageError at placement when there are more targets than spies.
std::unique_ptr<Policy> follower_spies(std::vector<std::size_t> targets);
/// Follows the first min(s, r) revolutionaries.
std::unique_ptr<Policy> follower_spies_default();

/// On a one-dimensional lattice, spy i stands on the (i k)-th smallest rev
/// coordinate; surplus spies stand on the largest.
std::unique_ptr<Policy> order_statistic_spies_path(std::uint32_t k);

/// One spy on the coordinatewise k-th order statistic of exactly 2k-1
/// revolutionaries in a lattice box.
std::unique_ptr<Policy> coordinatewise_orderstat_spy(std::uint32_t k);

/// Followers on the first r-2k+1 revolutionaries plus one median spy on
/// the remaining 2k-1; needs s >= r-2k+2 and 1 <= k <= r/2.
std::unique_ptr<Policy> composite_zd_spies(std::uint32_t k);

struct PartGroup {
  std::uint32_t r = 0;
  std::uint32_t s = 0;
  std::uint32_t k = 1;
  std::unique_ptr<Policy> policy;
};

/// Disjoint groups over the revolutionaries' sorted order at placement.
struct Partition {
  std::vector<PartGroup> groups;
};

/// Runs each group's spy policy against its own revolutionaries.
std::unique_ptr<Policy> sum_combinator(Partition parts);

/// Spy policy for power(G, n) driven by a spy policy for G.
std::unique_ptr<Policy> power_adaptor(std::unique_ptr<Policy> base,
                                      const Arena& base_arena, std::uint32_t n);

/// Spy policy for (G, r, s, k) from one for (G, a r, s, a k): every
/// revolutionary is shown to the base policy a times.
std::unique_ptr<Policy> group_lift_spies(std::unique_ptr<Policy> base,
                                         std::uint32_t a);

// Revolutionary strategies.

enum class Factor { First, Second };

/// Rev policy for G x H (strong product, id = g |H| + h) that keeps every
/// revolutionary in the copy of the chosen factor at the other factor's
/// vertex 0, feeding `base` the projected spies.
std::unique_ptr<Policy> projection_rev_adaptor(std::unique_ptr<Policy> base,
                                               const Arena& factor_arena,
                                               std::size_t other_size,
                                               Factor which = Factor::First);

/// Eight revolutionaries on the king grid, driven by the proof tree.
/// `offset` translates the formation; spies outside the engagement box
/// around it at placement are ignored for the rest of the match.
std::unique_ptr<Policy> theorem85_policy(
    certify::ProofTree tree = certify::ProofTree::builtin(),
    certify::Point offset = {0, 0});

/// floor(r/8) copies of the formation at (30 i, 0); plays in the first copy
/// whose engagement box holds at most five spies.
std::unique_ptr<Policy> replicated_policy();

// Harness opponents.

/// Uniform random placement and uniform random closed-neighbourhood steps.
std::unique_ptr<Policy> random_policy();

/// Revolutionaries step towards the coordinatewise median of their team
/// (BFS towards the most central member on arenas without coordinates),
/// with an occasional random step.
std::unique_ptr<Policy> greedy_crowding_revs();

/// Spies that greedily watch every vertex where two revolutionaries could
/// meet next round.
std::unique_ptr<Policy> guard_spies();

/// Guard spies that start from a random image of one of the proof tree's
/// case configurations, translated by `offset`.
std::unique_ptr<Policy> tree_adversary_spies(certify::Point offset = {0, 0});

/// Builds a policy from "name[:args]" for the given arena and team size
/// parameters. Names: follower, orderstat, medianspy, composite, sum,
/// powerlift, project, thm85, replicated, random, greedy, guard, tree,
/// solver.
/// `team` says which side the policy plays.
std::unique_ptr<Policy> make_policy(const std::string& spec, const Arena& arena,
                                    Team team, std::uint32_t r, std::uint32_t s,
                                    std::uint32_t k);

}  // namespace revspy
