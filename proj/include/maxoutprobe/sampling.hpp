#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "maxoutprobe/error.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/observed.hpp"
#include "maxoutprobe/random.hpp"

namespace mop {

struct SampleFractions {
  // Fraction of the complete graph's nodes selected for full observation;
  // only meaningful for node samplers.
  std::optional<double> f_n;
  // Fraction of the complete graph's edges present in the sample.
  double f_e = 0.0;
};

struct WalkStats {
  std::uint64_t steps = 0;
  std::uint64_t jumps = 0;
  std::uint64_t restarts = 0;
};

struct Sample {
  ObservedGraph graph;
  SampleFractions fractions;
  WalkStats walk;
};

struct WalkOptions {
  double jump_prob = 0.0;
  // Consecutive steps without a new edge before a plain walk restarts;
  // 0 means 100 * |V|.
  std::uint64_t stall_limit = 0;
  // Hard cap on steps; 0 means 1e6 + 1000 * |E|.
  std::uint64_t max_steps = 0;
};

inline std::size_t edge_target(const CompleteGraph& g, double edge_fraction) {
  if (!(edge_fraction > 0.0 && edge_fraction <= 1.0))
    throw ConfigError("edge fraction must lie in (0, 1], got " + format_double(edge_fraction));
  const double exact = edge_fraction * static_cast<double>(g.num_edges());
  auto m = static_cast<std::size_t>(std::floor(exact + 1e-9));
  if (m == 0)
    throw SamplingError("edge fraction " + format_double(edge_fraction) + " of " +
                        std::to_string(g.num_edges()) + " edges selects no edge");
  return m;
}

namespace detail {

// Adds u with its complete neighborhood and marks it Explored.
inline void explore_node(const CompleteGraph& g, ObservedGraph& obs, NodeId u) {
  for (NodeId w : g.neighbors(u)) obs.add_edge(u, w);
  obs.mark_explored(u);
}

inline SampleFractions fractions_of(const CompleteGraph& g, const ObservedGraph& obs,
                                    std::optional<std::size_t> selected) {
  SampleFractions f;
  f.f_e = static_cast<double>(obs.num_edges()) / static_cast<double>(g.num_edges());
  if (selected) f.f_n = static_cast<double>(*selected) / static_cast<double>(g.num_nodes());
  return f;
}

}  // namespace detail

// Selects uniformly random nodes one at a time, observing each with its full
// neighborhood, and stops at the first node that brings the observed edge
// count to floor(edge_fraction * |E|) or beyond.
inline Sample sample_random_node(const CompleteGraph& g, double edge_fraction, std::uint64_t seed) {
  const std::size_t target = edge_target(g, edge_fraction);
  Rng rng(seed);
  std::vector<NodeId> order(g.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});

  Sample s{ObservedGraph(g, SamplerKind::RandNode, edge_fraction), {}, {}};
  std::size_t selected = 0;
  for (std::size_t i = 0; i < order.size() && s.graph.num_edges() < target; ++i) {
    // lazy Fisher-Yates: draw the next node without shuffling the whole list
    std::size_t j = i + static_cast<std::size_t>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
    detail::explore_node(g, s.graph, order[i]);
    ++selected;
  }
  s.fractions = detail::fractions_of(g, s.graph, selected);
  return s;
}

// Selects every node independently with probability node_fraction. The
// independence matches the survival-probability model of the closed-form
// node-sample estimators; the sample may be empty.
inline Sample sample_bernoulli_node(const CompleteGraph& g, double node_fraction, std::uint64_t seed) {
  if (!(node_fraction > 0.0 && node_fraction <= 1.0))
    throw ConfigError("node fraction must lie in (0, 1], got " + format_double(node_fraction));
  Rng rng(seed);
  Sample s{ObservedGraph(g, SamplerKind::BernoulliNode, 0.0), {}, {}};
  std::size_t selected = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (!rng.bernoulli(node_fraction)) continue;
    detail::explore_node(g, s.graph, u);
    ++selected;
  }
  s.fractions = detail::fractions_of(g, s.graph, selected);
  return s;
}

// Exactly floor(edge_fraction * |E|) distinct edges, uniformly without
// replacement. No node is explored.
inline Sample sample_random_edge(const CompleteGraph& g, double edge_fraction, std::uint64_t seed) {
  const std::size_t target = edge_target(g, edge_fraction);
  Rng rng(seed);
  auto edges = g.edges();
  rng.partial_shuffle(edges, target);
  Sample s{ObservedGraph(g, SamplerKind::RandEdge, edge_fraction), {}, {}};
  for (std::size_t i = 0; i < target; ++i) s.graph.add_edge(edges[i].first, edges[i].second);
  s.fractions = detail::fractions_of(g, s.graph, std::nullopt);
  return s;
}

// Walks from a uniform random node, observing one traversed edge per step,
// until floor(edge_fraction * |E|) distinct edges are seen. With jump_prob > 0
// each step instead teleports to a uniform node with that probability.
inline Sample sample_random_walk(const CompleteGraph& g, double edge_fraction, WalkOptions opts,
                                 std::uint64_t seed) {
  const std::size_t target = edge_target(g, edge_fraction);
  if (!(opts.jump_prob >= 0.0 && opts.jump_prob < 1.0))
    throw ConfigError("jump probability must lie in [0, 1), got " + format_double(opts.jump_prob));
  const std::uint64_t stall_limit =
      opts.stall_limit ? opts.stall_limit : 100 * static_cast<std::uint64_t>(g.num_nodes());
  const std::uint64_t max_steps =
      opts.max_steps ? opts.max_steps : 1'000'000 + 1000 * static_cast<std::uint64_t>(g.num_edges());

  const bool jumping = opts.jump_prob > 0.0;
  Rng rng(seed);
  Sample s{ObservedGraph(g, jumping ? SamplerKind::RandomWalkJump : SamplerKind::RandomWalk,
                         edge_fraction),
           {},
           {}};
  auto& st = s.walk;
  auto random_node = [&] { return static_cast<NodeId>(rng.below(g.num_nodes())); };

  NodeId cur = random_node();
  std::uint64_t stall = 0;
  while (s.graph.num_edges() < target) {
    if (st.steps >= max_steps)
      throw SamplingError("random walk hit its step cap after observing " +
                          format_double(static_cast<double>(s.graph.num_edges()) /
                                        static_cast<double>(g.num_edges())) +
                          " of the edges");
    ++st.steps;
    if (jumping && rng.bernoulli(opts.jump_prob)) {
      cur = random_node();
      ++st.jumps;
      ++stall;
      continue;
    }
    auto nb = g.neighbors(cur);
    if (nb.empty()) {
      cur = random_node();
      ++st.restarts;
      continue;
    }
    NodeId next = nb[rng.below(nb.size())];
    if (s.graph.add_edge(cur, next))
      stall = 0;
    else
      ++stall;
    cur = next;
    if (!jumping && stall > stall_limit) {
      cur = random_node();
      ++st.restarts;
      stall = 0;
    }
  }
  s.fractions = detail::fractions_of(g, s.graph, std::nullopt);
  return s;
}

// Dispatches on the sampler tag. jump_prob only applies to RandomWalkJump; for
// BernoulliNode the fraction is the per-node selection probability.
inline Sample draw_sample(const CompleteGraph& g, SamplerKind kind, double edge_fraction,
                          double jump_prob, std::uint64_t seed) {
  switch (kind) {
    case SamplerKind::RandNode: return sample_random_node(g, edge_fraction, seed);
    case SamplerKind::RandEdge: return sample_random_edge(g, edge_fraction, seed);
    case SamplerKind::RandomWalk: return sample_random_walk(g, edge_fraction, WalkOptions{}, seed);
    case SamplerKind::RandomWalkJump: {
      WalkOptions o;
      o.jump_prob = jump_prob;
      if (!(jump_prob > 0.0)) throw ConfigError("rwj needs a positive jump probability");
      return sample_random_walk(g, edge_fraction, o, seed);
    }
    case SamplerKind::BernoulliNode: return sample_bernoulli_node(g, edge_fraction, seed);
    case SamplerKind::None: break;
  }
  throw ConfigError("no sampler selected");
}

}  // namespace mop
