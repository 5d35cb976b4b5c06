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

#include "revspy/arena.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "revspy/errors.hpp"

namespace revspy {

namespace {

constexpr std::size_t kDistanceCacheLimit = 2048;

void check_budget(std::uint64_t count, std::uint64_t budget,
                  const std::string& what) {
  if (count > budget) {
    throw ResourceError(what + " needs " + std::to_string(count) +
                            " vertices, budget is " + std::to_string(budget),
                        count);
  }
}

}  // namespace

Arena Arena::from_edges(std::size_t vertex_count,
                        const std::vector<std::pair<Vertex, Vertex>>& edges,
                        std::uint64_t vertex_budget) {
  check_budget(vertex_count, vertex_budget, "graph");
  std::vector<std::vector<Vertex>> lists(vertex_count);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw UsageError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") out of range for " + std::to_string(vertex_count) +
                       " vertices");
    }
    if (u == v) {
      throw UsageError("self-loop at vertex " + std::to_string(u));
    }
    lists[u].push_back(v);
    lists[v].push_back(u);
  }
  Arena arena;
  arena.offsets_.assign(1, 0);
  for (auto& list : lists) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw UsageError("duplicate edge in graph");
    }
    arena.adjacency_.insert(arena.adjacency_.end(), list.begin(), list.end());
    arena.offsets_.push_back(arena.adjacency_.size());
  }
  arena.build_closed();
  arena.build_distance_cache();
  return arena;
}

Arena Arena::lattice_box(int dimension, int lo, int hi,
                         std::uint64_t vertex_budget) {
  if (dimension < 1) throw UsageError("box dimension must be >= 1");
  if (lo > hi) throw UsageError("box bounds must satisfy lo <= hi");
  const std::uint64_t side = static_cast<std::uint64_t>(hi - lo + 1);
  std::uint64_t count = 1;
  for (int i = 0; i < dimension; ++i) {
    count *= side;
    check_budget(count, vertex_budget, "lattice box");
  }

  Arena arena;
  arena.kind_ = ArenaKind::LatticeBox;
  arena.dimension_ = dimension;
  arena.box_lo_ = lo;
  arena.box_hi_ = hi;
  arena.coords_.resize(count * dimension);
  for (std::uint64_t id = 0; id < count; ++id) {
    std::uint64_t rest = id;
    for (int axis = dimension - 1; axis >= 0; --axis) {
      arena.coords_[id * dimension + axis] = lo + static_cast<int>(rest % side);
      rest /= side;
    }
  }

  arena.offsets_.assign(1, 0);
  std::vector<int> delta(dimension, -1);
  std::vector<int> point(dimension);
  for (std::uint64_t id = 0; id < count; ++id) {
    auto base = arena.coords(static_cast<Vertex>(id));
    std::fill(delta.begin(), delta.end(), -1);
    std::vector<Vertex> list;
    while (true) {
      bool inside = true;
      bool zero = true;
      for (int axis = 0; axis < dimension; ++axis) {
        point[axis] = base[axis] + delta[axis];
        if (point[axis] < lo || point[axis] > hi) inside = false;
        if (delta[axis] != 0) zero = false;
      }
      if (inside && !zero) list.push_back(*arena.vertex_at(point));
      int axis = dimension - 1;
      while (axis >= 0 && delta[axis] == 1) delta[axis--] = -1;
      if (axis < 0) break;
      ++delta[axis];
    }
    std::sort(list.begin(), list.end());
    arena.adjacency_.insert(arena.adjacency_.end(), list.begin(), list.end());
    arena.offsets_.push_back(arena.adjacency_.size());
  }
  arena.build_closed();
  return arena;
}

void Arena::build_closed() {
  closed_offsets_.assign(1, 0);
  closed_.clear();
  closed_.reserve(adjacency_.size() + size());
  for (Vertex v = 0; v < size(); ++v) {
    auto nb = neighbors(v);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    closed_.insert(closed_.end(), nb.begin(), it);
    closed_.push_back(v);
    closed_.insert(closed_.end(), it, nb.end());
    closed_offsets_.push_back(closed_.size());
  }
}

void Arena::build_distance_cache() {
  distance_cache_.clear();
  if (kind_ == ArenaKind::LatticeBox || size() > kDistanceCacheLimit) return;
  std::vector<std::uint32_t> cache;
  cache.reserve(size() * size());
  for (Vertex v = 0; v < size(); ++v) {
    auto row = distances_from(v);
    cache.insert(cache.end(), row.begin(), row.end());
  }
  distance_cache_ = std::move(cache);
}

void Arena::check_vertex(Vertex v) const {
  if (v >= size()) {
    throw UsageError("vertex " + std::to_string(v) + " out of range (n=" +
                     std::to_string(size()) + ")");
  }
}

std::span<const Vertex> Arena::neighbors(Vertex v) const {
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const Vertex> Arena::closed_neighborhood(Vertex v) const {
  return {closed_.data() + closed_offsets_[v],
          closed_offsets_[v + 1] - closed_offsets_[v]};
}

bool Arena::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::uint32_t> Arena::distances_from(Vertex source) const {
  check_vertex(source);
  std::vector<std::uint32_t> dist(size(), kInfiniteDistance);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : neighbors(v)) {
      if (dist[w] == kInfiniteDistance) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::uint32_t Arena::distance(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (kind_ == ArenaKind::LatticeBox) {
    return static_cast<std::uint32_t>(chebyshev(coords(u), coords(v)));
  }
  if (!distance_cache_.empty()) return distance_cache_[u * size() + v];
  return distances_from(u)[v];
}

std::span<const int> Arena::coords(Vertex v) const {
  if (dimension_ == 0) return {};
  return {coords_.data() + static_cast<std::size_t>(v) * dimension_,
          static_cast<std::size_t>(dimension_)};
}

std::optional<Vertex> Arena::vertex_at(std::span<const int> point) const {
  if (static_cast<int>(point.size()) != dimension_ || dimension_ == 0) {
    return std::nullopt;
  }
  if (kind_ == ArenaKind::LatticeBox) {
    const std::uint64_t side = static_cast<std::uint64_t>(box_hi_ - box_lo_ + 1);
    std::uint64_t id = 0;
    for (int c : point) {
      if (c < box_lo_ || c > box_hi_) return std::nullopt;
      id = id * side + static_cast<std::uint64_t>(c - box_lo_);
    }
    return static_cast<Vertex>(id);
  }
  for (Vertex v = 0; v < size(); ++v) {
    auto c = coords(v);
    if (std::equal(c.begin(), c.end(), point.begin())) return v;
  }
  return std::nullopt;
}

void Arena::set_coords(int dimension, std::vector<int> flat_coords) {
  if (dimension < 1 ||
      flat_coords.size() != size() * static_cast<std::size_t>(dimension)) {
    throw UsageError("coordinate table does not match arena size");
  }
  dimension_ = dimension;
  coords_ = std::move(flat_coords);
}

std::string Arena::label(Vertex v) const {
  if (dimension_ == 0) return std::to_string(v);
  std::string out = "(";
  auto c = coords(v);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out + ")";
}

int chebyshev(std::span<const int> a, std::span<const int> b) {
  int best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    best = std::max(best, std::abs(a[i] - b[i]));
  }
  return best;
}

Arena make_path(std::size_t n) {
  if (n == 0) throw UsageError("path needs at least one vertex");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  Arena arena = Arena::from_edges(n, edges);
  std::vector<int> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = static_cast<int>(i);
  arena.set_coords(1, std::move(coords));
  return arena;
}

Arena make_cycle(std::size_t n) {
  if (n < 3) throw UsageError("cycle needs at least three vertices");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < n; ++i) {
    edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  }
  return Arena::from_edges(n, edges);
}

Arena make_star(std::size_t n) {
  if (n == 0) throw UsageError("star needs at least one vertex");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Arena::from_edges(n, edges);
}

Arena power(const Arena& arena, std::uint32_t n, std::uint64_t vertex_budget) {
  if (n == 0) throw UsageError("graph power exponent must be >= 1");
  check_budget(arena.size(), vertex_budget, "power");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < arena.size(); ++u) {
    auto row = arena.distances_from(u);
    for (Vertex v = u + 1; v < arena.size(); ++v) {
      if (row[v] != kInfiniteDistance && row[v] <= n) edges.emplace_back(u, v);
    }
  }
  Arena result = Arena::from_edges(arena.size(), edges, vertex_budget);
  if (arena.has_coords()) {
    std::vector<int> coords;
    for (Vertex v = 0; v < arena.size(); ++v) {
      auto c = arena.coords(v);
      coords.insert(coords.end(), c.begin(), c.end());
    }
    result.set_coords(arena.dimension(), std::move(coords));
  }
  return result;
}

Arena strong_product(const Arena& a, const Arena& b,
                     std::uint64_t vertex_budget) {
  const std::uint64_t count =
      static_cast<std::uint64_t>(a.size()) * static_cast<std::uint64_t>(b.size());
  check_budget(count, vertex_budget, "strong product");
  const auto nb = static_cast<Vertex>(b.size());
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex g = 0; g < a.size(); ++g) {
    for (Vertex h = 0; h < b.size(); ++h) {
      const Vertex u = g * nb + h;
      for (Vertex g2 : a.closed_neighborhood(g)) {
        for (Vertex h2 : b.closed_neighborhood(h)) {
          const Vertex v = g2 * nb + h2;
          if (u < v) edges.emplace_back(u, v);
        }
      }
    }
  }
  Arena result = Arena::from_edges(count, edges, vertex_budget);
  if (a.has_coords() && b.has_coords()) {
    std::vector<int> coords;
    coords.reserve(count * (a.dimension() + b.dimension()));
    for (Vertex g = 0; g < a.size(); ++g) {
      for (Vertex h = 0; h < b.size(); ++h) {
        auto ca = a.coords(g);
        auto cb = b.coords(h);
        coords.insert(coords.end(), ca.begin(), ca.end());
        coords.insert(coords.end(), cb.begin(), cb.end());
      }
    }
    result.set_coords(a.dimension() + b.dimension(), std::move(coords));
  }
  return result;
}

Arena king_graph(std::size_t width, std::size_t height,
                 std::uint64_t vertex_budget) {
  return strong_product(make_path(width), make_path(height), vertex_budget);
}

namespace {

class SpecParser {
 public:
  SpecParser(std::string_view spec, std::uint64_t budget)
      : spec_(spec), budget_(budget) {
    std::size_t start = 0;
    while (true) {
      auto colon = spec.find(':', start);
      tokens_.emplace_back(spec.substr(start, colon - start));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
  }

  Arena parse_all() {
    Arena arena = parse();
    if (pos_ != tokens_.size()) fail("trailing tokens");
    return arena;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UsageError("bad arena spec '" + std::string(spec_) + "': " + why);
  }

  std::string_view next() {
    if (pos_ >= tokens_.size()) fail("unexpected end");
    return tokens_[pos_++];
  }

  long long number(std::string_view token) const {
    long long value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      fail("expected an integer, got '" + std::string(token) + "'");
    }
    return value;
  }

  std::size_t count(std::string_view token) const {
    long long value = number(token);
    if (value < 1) fail("size must be positive");
    if (static_cast<std::uint64_t>(value) > budget_) {
      throw ResourceError("arena size " + std::to_string(value) +
                              " exceeds vertex budget",
                          static_cast<std::uint64_t>(value));
    }
    return static_cast<std::size_t>(value);
  }

  Arena parse() {
    std::string_view head = next();
    if (head == "path") return make_path(count(next()));
    if (head == "cycle") return make_cycle(count(next()));
    if (head == "star") return make_star(count(next()));
    if (head == "king") {
      std::string_view dims = next();
      auto x = dims.find('x');
      if (x == std::string_view::npos) fail("king needs WxH");
      return king_graph(count(dims.substr(0, x)), count(dims.substr(x + 1)),
                        budget_);
    }
    if (head == "box") {
      long long d = number(next());
      long long lo = number(next());
      long long hi = number(next());
      if (d < 1 || d > 8) fail("box dimension out of range");
      return Arena::lattice_box(static_cast<int>(d), static_cast<int>(lo),
                                static_cast<int>(hi), budget_);
    }
    if (head == "power") {
      long long n = number(next());
      if (n < 1) fail("power exponent must be >= 1");
      Arena base = parse();
      return power(base, static_cast<std::uint32_t>(n), budget_);
    }
    if (head == "product") {
      Arena a = parse();
      Arena b = parse();
      return strong_product(a, b, budget_);
    }
    if (head == "file") return read_graph_file(std::string(next()), budget_);
    fail("unknown arena kind '" + std::string(head) + "'");
  }

  std::string_view spec_;
  std::uint64_t budget_;
  std::vector<std::string_view> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Arena make_arena(std::string_view spec, std::uint64_t vertex_budget) {
  return SpecParser(spec, vertex_budget).parse_all();
}

Arena parse_graph_text(std::string_view text, std::uint64_t vertex_budget) {
  std::istringstream lines{std::string(text)};
  std::string line;
  std::vector<long long> numbers;
  std::size_t line_no = 0;
  std::vector<std::size_t> number_lines;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string field;
    while (fields >> field) {
      long long value = 0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size() || value < 0) {
        throw UsageError("graph file line " + std::to_string(line_no) +
                         ": bad number '" + field + "'");
      }
      numbers.push_back(value);
      number_lines.push_back(line_no);
    }
  }
  if (numbers.size() < 2) throw UsageError("graph file needs a 'n m' header");
  const auto n = static_cast<std::uint64_t>(numbers[0]);
  const auto m = static_cast<std::uint64_t>(numbers[1]);
  if (numbers.size() != 2 + 2 * m) {
    throw UsageError("graph file declares " + std::to_string(m) +
                     " edges but lists " +
                     std::to_string((numbers.size() - 2) / 2));
  }
  check_budget(n, vertex_budget, "graph file");
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::uint64_t i = 0; i < m; ++i) {
    auto u = static_cast<std::uint64_t>(numbers[2 + 2 * i]);
    auto v = static_cast<std::uint64_t>(numbers[3 + 2 * i]);
    const auto where = "graph file line " + std::to_string(number_lines[2 + 2 * i]);
    if (u >= n || v >= n) throw UsageError(where + ": vertex out of range");
    if (u == v) throw UsageError(where + ": self edge");
    const auto a = static_cast<Vertex>(u);
    const auto b = static_cast<Vertex>(v);
    const std::pair<Vertex, Vertex> key{std::min(a, b), std::max(a, b)};
    if (!seen.insert(key).second) throw UsageError(where + ": duplicate edge");
    edges.emplace_back(key);
  }
  return Arena::from_edges(n, edges, vertex_budget);
}

Arena read_graph_file(const std::string& path, std::uint64_t vertex_budget) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_text(buffer.str(), vertex_budget);
}

}  // namespace revspy
