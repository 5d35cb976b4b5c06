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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace revspy {

using Vertex = std::uint32_t;

inline constexpr std::uint32_t kInfiniteDistance =
    std::numeric_limits<std::uint32_t>::max();
inline constexpr std::uint64_t kDefaultVertexBudget = 1'000'000;

enum class ArenaKind { Explicit, LatticeBox };

/// Immutable undirected simple graph with dense vertex ids.
///
/// Lattice-box arenas are finite slices [lo,hi]^d of the d-fold strong
/// product of the integer path; their adjacency is Chebyshev distance 1 and
/// vertex ids are row-major over the coordinates (last coordinate fastest).
/// Explicit arenas may also carry coordinates (products of paths do), which
/// are used only for printing and by coordinate-aware strategies.
class Arena {
 public:
  static Arena from_edges(std::size_t vertex_count,
                          const std::vector<std::pair<Vertex, Vertex>>& edges,
                          std::uint64_t vertex_budget = kDefaultVertexBudget);
  static Arena lattice_box(int dimension, int lo, int hi,
                           std::uint64_t vertex_budget = kDefaultVertexBudget);

  ArenaKind kind() const { return kind_; }
  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  /// Neighbors in ascending id order, excluding v itself.
  std::span<const Vertex> neighbors(Vertex v) const;
  /// v together with its neighbors, ascending.
  std::span<const Vertex> closed_neighborhood(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool adjacent(Vertex u, Vertex v) const;

  /// Shortest-path length, kInfiniteDistance when disconnected.
  std::uint32_t distance(Vertex u, Vertex v) const;
  /// Full BFS row from `source`.
  std::vector<std::uint32_t> distances_from(Vertex source) const;

  bool has_coords() const { return dimension_ > 0; }
  int dimension() const { return dimension_; }
  std::span<const int> coords(Vertex v) const;
  std::optional<Vertex> vertex_at(std::span<const int> coords) const;
  /// Bounds of the box for lattice arenas.
  int box_lo() const { return box_lo_; }
  int box_hi() const { return box_hi_; }

  /// "(x,y)" for arenas with coordinates, otherwise the decimal id.
  std::string label(Vertex v) const;

  /// Attach coordinates to an explicit arena (one tuple per vertex).
  void set_coords(int dimension, std::vector<int> flat_coords);

  void check_vertex(Vertex v) const;

 private:
  Arena() = default;
  void build_closed();
  void build_distance_cache();

  ArenaKind kind_ = ArenaKind::Explicit;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
  std::vector<std::size_t> closed_offsets_{0};
  std::vector<Vertex> closed_;
  int dimension_ = 0;
  std::vector<int> coords_;
  int box_lo_ = 0;
  int box_hi_ = 0;
  std::vector<std::uint32_t> distance_cache_;  // n*n when small
};

Arena make_path(std::size_t n);
Arena make_cycle(std::size_t n);
/// Star with `n` vertices in total: centre 0 joined to 1..n-1.
Arena make_star(std::size_t n);
Arena power(const Arena& arena, std::uint32_t n,
            std::uint64_t vertex_budget = kDefaultVertexBudget);
/// Strong product. Vertex (i, j) gets id i * b.size() + j.
Arena strong_product(const Arena& a, const Arena& b,
                     std::uint64_t vertex_budget = kDefaultVertexBudget);
Arena king_graph(std::size_t width, std::size_t height,
                 std::uint64_t vertex_budget = kDefaultVertexBudget);

/// Parses `path:N | cycle:N | star:N | king:WxH | box:d:lo:hi |
/// power:n:<spec> | product:<spec>:<spec> | file:<path>`.
Arena make_arena(std::string_view spec,
                 std::uint64_t vertex_budget = kDefaultVertexBudget);

/// Reads the `n m` + edge-list format.
Arena read_graph_file(const std::string& path,
                      std::uint64_t vertex_budget = kDefaultVertexBudget);
Arena parse_graph_text(std::string_view text,
                       std::uint64_t vertex_budget = kDefaultVertexBudget);

/// Chebyshev distance between integer tuples of equal length.
int chebyshev(std::span<const int> a, std::span<const int> b);

}  // namespace revspy
