#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "maxoutprobe/error.hpp"
#include "maxoutprobe/graph.hpp"

namespace mop {

// Anything with a node universe [0, universe_size()), a presence test, and
// ascending neighbor lists. Both CompleteGraph and ObservedGraph qualify.
template <class G>
concept AdjacencyGraph = requires(const G& g, NodeId u) {
  { g.universe_size() } -> std::convertible_to<std::size_t>;
  { g.contains(u) } -> std::same_as<bool>;
  { g.neighbors(u) } -> std::convertible_to<std::span<const NodeId>>;
};

struct TriangleWedgeCounts {
  std::uint64_t triangles = 0;
  // Length-2 paths, closed or open: sum over v of C(deg(v), 2).
  std::uint64_t wedges = 0;

  friend bool operator==(const TriangleWedgeCounts&, const TriangleWedgeCounts&) = default;
};

inline std::size_t count_common(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

inline std::vector<NodeId> common_neighbors(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <AdjacencyGraph G>
std::size_t degree(const G& g, NodeId u) {
  if (!g.contains(u)) throw UnknownNodeError("unknown node index " + std::to_string(u));
  return std::span<const NodeId>(g.neighbors(u)).size();
}

template <AdjacencyGraph G>
bool adjacent(const G& g, NodeId u, NodeId v) {
  std::span<const NodeId> nb = g.neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

template <AdjacencyGraph G>
TriangleWedgeCounts count_triangles_wedges(const G& g) {
  TriangleWedgeCounts c;
  const auto n = static_cast<NodeId>(g.universe_size());
  for (NodeId u = 0; u < n; ++u) {
    if (!g.contains(u)) continue;
    std::span<const NodeId> nu = g.neighbors(u);
    const std::uint64_t d = nu.size();
    c.wedges += d * (d - (d > 0 ? 1 : 0)) / 2;
    // u < v < w, each triangle once
    for (NodeId v : nu) {
      if (v <= u) continue;
      std::span<const NodeId> nv = g.neighbors(v);
      auto i = std::upper_bound(nu.begin(), nu.end(), v);
      auto j = std::upper_bound(nv.begin(), nv.end(), v);
      c.triangles += count_common({i, nu.end()}, {j, nv.end()});
    }
  }
  return c;
}

// Transitivity 3T/W, or 0 when the graph has no wedge.
template <AdjacencyGraph G>
double global_clustering(const G& g) {
  auto c = count_triangles_wedges(g);
  if (c.wedges == 0) return 0.0;
  return 3.0 * static_cast<double>(c.triangles) / static_cast<double>(c.wedges);
}

template <AdjacencyGraph G>
std::size_t edges_among_neighbors(const G& g, NodeId u) {
  std::span<const NodeId> nu = g.neighbors(u);
  std::size_t links = 0;
  for (NodeId v : nu) links += count_common(nu, g.neighbors(v));
  return links / 2;
}

template <AdjacencyGraph G>
double local_clustering(const G& g, NodeId u) {
  const std::size_t d = degree(g, u);
  if (d < 2) return 0.0;
  return static_cast<double>(edges_among_neighbors(g, u)) /
         (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
}

}  // namespace mop
