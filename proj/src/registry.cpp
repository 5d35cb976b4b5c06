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

#include <charconv>
#include <memory>

#include "revspy/errors.hpp"
#include "revspy/solver.hpp"
#include "revspy/strategies.hpp"

namespace revspy {

namespace {

/// Keeps auxiliary objects (factor arenas, solver tables) alive for the
/// lifetime of the wrapped policy.
class Owning final : public Policy {
 public:
  Owning(std::shared_ptr<const void> keep, std::unique_ptr<Policy> inner)
      : keep_(std::move(keep)), inner_(std::move(inner)) {}
  std::string name() const override { return inner_->name(); }
  void reset(std::uint64_t seed) override { inner_->reset(seed); }
  std::vector<Vertex> place(const GameState& s, std::size_t n) override {
    return inner_->place(s, n);
  }
  JointMove move(const GameState& s) override { return inner_->move(s); }
  std::vector<std::string> take_notes() override { return inner_->take_notes(); }

 private:
  std::shared_ptr<const void> keep_;
  std::unique_ptr<Policy> inner_;
};

std::vector<std::uint32_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::uint32_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto item = text.substr(start, comma - start);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError(what + ": bad number '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool same_graph(const Arena& a, const Arena& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  for (Vertex v = 0; v < a.size(); ++v) {
    auto x = a.neighbors(v);
    auto y = b.neighbors(v);
    if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
  }
  return true;
}

}  // namespace

std::unique_ptr<Policy> make_policy(const std::string& spec, const Arena& arena,
                                    Team team, std::uint32_t r, std::uint32_t s,
                                    std::uint32_t k) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto only = [&](Team t) {
    if (team != t) {
      throw UsageError("strategy '" + name + "' plays the " +
                       (t == Team::Rev ? "revolutionaries" : "spies"));
    }
  };
  auto no_args = [&] {
    if (!args.empty()) throw UsageError("strategy '" + name + "' takes no arguments");
  };

  if (name == "random") {
    no_args();
    return random_policy();
  }
  if (name == "solver") {
    no_args();
    return extract_policy(solve(arena, r, s, k), team);
  }
  if (name == "follower") {
    only(Team::Spy);
    if (args.empty()) return follower_spies_default();
    std::vector<std::size_t> targets;
    for (auto t : parse_list(args, "follower")) targets.push_back(t);
    return follower_spies(std::move(targets));
  }
  if (name == "orderstat") {
    only(Team::Spy);
    no_args();
    return order_statistic_spies_path(k);
  }
  if (name == "medianspy") {
    only(Team::Spy);
    no_args();
    return coordinatewise_orderstat_spy(k);
  }
  if (name == "composite") {
    only(Team::Spy);
    no_args();
    return composite_zd_spies(k);
  }
  if (name == "sum") {
    only(Team::Spy);
    auto ks = args.empty() ? std::vector<std::uint32_t>{2, 2} : parse_list(args, "sum");
    Partition parts;
    std::uint32_t spies = 0;
    const auto c = static_cast<std::uint32_t>(ks.size());
    for (std::uint32_t i = 0; i < c; ++i) {
      const std::uint32_t ri = r / c + (i < r % c ? 1 : 0);
      if (2 * ks[i] > ri || ks[i] == 0) {
        throw UsageError("sum: group " + std::to_string(i) + " has " + std::to_string(ri) +
                         " revolutionaries, too few for k=" + std::to_string(ks[i]));
      }
      const std::uint32_t si = ri - 2 * ks[i] + 2;
      spies += si;
      parts.groups.push_back({ri, si, ks[i], composite_zd_spies(ks[i])});
    }
    if (spies != s) {
      throw UsageError("sum: these groups need s=" + std::to_string(spies));
    }
    return sum_combinator(std::move(parts));
  }
  if (name == "powerlift") {
    only(Team::Spy);
    const auto sep = args.find(':');
    if (sep == std::string::npos) throw UsageError("powerlift:<n>:<base arena>");
    const auto n = parse_list(args.substr(0, sep), "powerlift").at(0);
    auto base_arena = std::make_shared<Arena>(make_arena(args.substr(sep + 1)));
    if (!same_graph(power(*base_arena, n), arena)) {
      throw UsageError("powerlift: arena is not power " + std::to_string(n) +
                       " of the base arena");
    }
    std::unique_ptr<Policy> base;
    std::shared_ptr<const void> keep = base_arena;
    if (base_arena->has_coords() && base_arena->dimension() == 1) {
      base = order_statistic_spies_path(k);
    } else {
      auto table = solve(*base_arena, r, s, k);
      base = extract_policy(table, Team::Spy);
    }
    return std::make_unique<Owning>(keep, power_adaptor(std::move(base), *base_arena, n));
  }
  if (name == "project") {
    only(Team::Rev);
    const auto sep = args.find(':');
    const std::string which = args.substr(0, sep);
    if (sep == std::string::npos || (which != "first" && which != "second")) {
      throw UsageError("project:<first|second>:<factor arena>");
    }
    auto factor = std::make_shared<Arena>(make_arena(args.substr(sep + 1)));
    if (factor->size() == 0 || arena.size() % factor->size() != 0) {
      throw UsageError("project: factor size does not divide the arena size");
    }
    auto base = extract_policy(solve(*factor, r, s, k), Team::Rev);
    return std::make_unique<Owning>(
        factor, projection_rev_adaptor(std::move(base), *factor, arena.size() / factor->size(),
                                       which == "first" ? Factor::First : Factor::Second));
  }
  if (name == "thm85") {
    only(Team::Rev);
    return theorem85_policy(args.empty() ? certify::ProofTree::builtin()
                                         : certify::ProofTree::load(args));
  }
  if (name == "replicated") {
    only(Team::Rev);
    no_args();
    return replicated_policy();
  }
  if (name == "greedy") {
    only(Team::Rev);
    no_args();
    return greedy_crowding_revs();
  }
  if (name == "guard") {
    only(Team::Spy);
    no_args();
    return guard_spies();
  }
  if (name == "tree") {
    only(Team::Spy);
    no_args();
    return tree_adversary_spies();
  }
  throw UsageError("unknown strategy '" + name + "'");
}

}  // namespace revspy
