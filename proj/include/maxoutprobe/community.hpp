#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "maxoutprobe/algorithms.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/random.hpp"

namespace mop {

inline constexpr std::uint32_t kNoCommunity = std::numeric_limits<std::uint32_t>::max();

// community[u] for every node of the universe; kNoCommunity for absent nodes.
// Community ids are dense, numbered by first appearance in ascending node order.
struct Partition {
  std::vector<std::uint32_t> community;
  std::size_t count = 0;
};

namespace detail {

// Weighted graph used between Louvain levels. Edges appear in both endpoint
// lists; self_weight[i] carries twice the weight of edges folded into node i.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> self_weight;
  std::vector<double> strength;
  double total = 0.0;  // 2m

  std::size_t size() const { return adj.size(); }

  void finish() {
    strength.assign(adj.size(), 0.0);
    total = 0.0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      double s = self_weight[i];
      for (auto& [j, w] : adj[i]) s += w;
      strength[i] = s;
      total += s;
    }
  }
};

// One round of local moving. Returns the community of each node and whether
// any node moved.
inline std::pair<std::vector<std::uint32_t>, bool> local_moving(const WeightedGraph& wg, Rng& rng) {
  const std::size_t n = wg.size();
  std::vector<std::uint32_t> comm(n);
  std::vector<double> tot(wg.strength);
  for (std::uint32_t i = 0; i < n; ++i) comm[i] = i;

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);

  std::vector<double> link(n, 0.0);
  std::vector<char> mark(n, 0);
  std::vector<std::uint32_t> touched;
  auto touch = [&](std::uint32_t c) {
    if (mark[c]) return;
    mark[c] = 1;
    touched.push_back(c);
  };
  bool any_move = false;
  constexpr double kEps = 1e-12;

  for (bool moved = true; moved;) {
    moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t own = comm[i];
      const double ki = wg.strength[i];
      touched.clear();
      touch(own);
      for (auto [j, w] : wg.adj[i]) {
        touch(comm[j]);
        link[comm[j]] += w;
      }
      tot[own] -= ki;
      // gain of joining c, up to terms independent of c
      auto gain = [&](std::uint32_t c) { return link[c] - tot[c] * ki / wg.total; };
      std::uint32_t best = own;
      double best_gain = gain(own);
      for (std::uint32_t c : touched) {
        double gc = gain(c);
        if (gc > best_gain + kEps) {
          best = c;
          best_gain = gc;
        }
      }
      tot[best] += ki;
      if (best != own) {
        comm[i] = best;
        moved = true;
        any_move = true;
      }
      for (std::uint32_t c : touched) {
        link[c] = 0.0;
        mark[c] = 0;
      }
    }
  }
  return {comm, any_move};
}

inline std::uint32_t renumber(std::vector<std::uint32_t>& comm) {
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  for (auto& c : comm) {
    auto [it, inserted] = ids.try_emplace(c, static_cast<std::uint32_t>(ids.size()));
    c = it->second;
  }
  return static_cast<std::uint32_t>(ids.size());
}

inline WeightedGraph aggregate(const WeightedGraph& wg, const std::vector<std::uint32_t>& comm,
                               std::uint32_t k) {
  WeightedGraph out;
  out.adj.resize(k);
  out.self_weight.assign(k, 0.0);
  std::vector<std::unordered_map<std::uint32_t, double>> acc(k);
  for (std::size_t i = 0; i < wg.size(); ++i) {
    const auto ci = comm[i];
    out.self_weight[ci] += wg.self_weight[i];
    for (auto [j, w] : wg.adj[i]) {
      const auto cj = comm[j];
      if (ci == cj)
        out.self_weight[ci] += w;
      else
        acc[ci][cj] += w;
    }
  }
  for (std::uint32_t c = 0; c < k; ++c) {
    out.adj[c].assign(acc[c].begin(), acc[c].end());
    std::sort(out.adj[c].begin(), out.adj[c].end());
  }
  out.finish();
  return out;
}

}  // namespace detail

template <AdjacencyGraph G>
double modularity(const G& g, const Partition& p) {
  double two_m = 0.0;
  std::vector<double> tot(p.count, 0.0), in(p.count, 0.0);
  for (NodeId u = 0; u < g.universe_size(); ++u) {
    if (!g.contains(u)) continue;
    std::span<const NodeId> nb = g.neighbors(u);
    const auto cu = p.community.at(u);
    two_m += static_cast<double>(nb.size());
    tot[cu] += static_cast<double>(nb.size());
    for (NodeId v : nb)
      if (p.community.at(v) == cu) in[cu] += 1.0;
  }
  if (two_m == 0.0) return 0.0;
  double q = 0.0;
  for (std::size_t c = 0; c < p.count; ++c) q += in[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
  return q;
}

// Louvain modularity optimization at resolution 1: local moving followed by
// aggregation, repeated until a level makes no move. The node visiting order
// at every level is a seeded shuffle, so a seed fixes the result.
template <AdjacencyGraph G>
Partition detect_communities(const G& g, std::uint64_t seed) {
  std::vector<NodeId> present;
  std::vector<std::uint32_t> compact(g.universe_size(), kNoCommunity);
  for (NodeId u = 0; u < g.universe_size(); ++u) {
    if (!g.contains(u)) continue;
    compact[u] = static_cast<std::uint32_t>(present.size());
    present.push_back(u);
  }

  detail::WeightedGraph wg;
  wg.adj.resize(present.size());
  wg.self_weight.assign(present.size(), 0.0);
  for (std::uint32_t i = 0; i < present.size(); ++i) {
    std::span<const NodeId> nb = g.neighbors(present[i]);
    wg.adj[i].reserve(nb.size());
    for (NodeId v : nb) wg.adj[i].emplace_back(compact[v], 1.0);
  }
  wg.finish();

  // membership[i] tracks the current top-level community of original node i
  std::vector<std::uint32_t> membership(present.size());
  for (std::uint32_t i = 0; i < present.size(); ++i) membership[i] = i;

  Rng rng(seed);
  if (wg.total > 0.0) {
    for (;;) {
      auto [comm, moved] = detail::local_moving(wg, rng);
      if (!moved) break;
      const auto k = detail::renumber(comm);
      for (auto& m : membership) m = comm[m];
      wg = detail::aggregate(wg, comm, k);
    }
  }

  Partition p;
  p.community.assign(g.universe_size(), kNoCommunity);
  for (std::uint32_t i = 0; i < present.size(); ++i) p.community[present[i]] = membership[i];
  // dense ids in ascending node order
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  for (NodeId u : present) {
    auto [it, inserted] = ids.try_emplace(p.community[u], static_cast<std::uint32_t>(ids.size()));
    p.community[u] = it->second;
  }
  p.count = ids.size();
  return p;
}

}  // namespace mop
