#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maxoutprobe/error.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/random.hpp"

// Synthetic complete graphs. Nodes are labelled "0".."n-1"; a node left
// without edges does not appear in the result.
namespace mop::gen {

namespace detail {

inline void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0, 1]");
}

// Visits the pairs of a size-`count` index space that survive independent
// coin flips of probability p, using geometric skips between successes.
template <class F>
void bernoulli_indices(std::uint64_t count, double p, Rng& rng, F&& visit) {
  if (p <= 0.0 || count == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) visit(i);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t i = 0;
  for (;;) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(count - i)) return;
    i += static_cast<std::uint64_t>(skip);
    visit(i);
    if (++i >= count) return;
  }
}

}  // namespace detail

// Stochastic block model with equal in/out probabilities for every block.
inline CompleteGraph planted_partition(std::span<const std::size_t> sizes, double p_in, double p_out,
                                       std::uint64_t seed) {
  detail::check_prob(p_in, "p_in");
  detail::check_prob(p_out, "p_out");
  std::vector<std::size_t> start{0};
  for (auto s : sizes) start.push_back(start.back() + s);
  const std::uint64_t n = start.back();

  Rng rng(seed);
  GraphBuilder b;
  auto add = [&](std::uint64_t u, std::uint64_t v) { b.add_edge(std::to_string(u), std::to_string(v)); };

  // within blocks: pairs (i, j), i < j, in row-major order
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    const std::uint64_t s = sizes[c];
    for (std::uint64_t i = 0; i + 1 < s; ++i)
      detail::bernoulli_indices(s - 1 - i, p_in, rng,
                                [&](std::uint64_t k) { add(start[c] + i, start[c] + i + 1 + k); });
  }
  // between blocks: for node u, candidates are all later nodes outside u's block
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    const std::uint64_t later = n - start[c + 1];
    for (std::uint64_t u = start[c]; u < start[c + 1]; ++u)
      detail::bernoulli_indices(later, p_out, rng, [&](std::uint64_t k) { add(u, start[c + 1] + k); });
  }
  return b.build();
}

// Block sizes drawn uniformly from [min_size, max_size] until they cover n
// nodes; the last block is trimmed.
inline std::vector<std::size_t> random_block_sizes(std::size_t n, std::size_t min_size, std::size_t max_size,
                                                   std::uint64_t seed) {
  if (min_size == 0 || max_size < min_size) throw ConfigError("invalid block size range");
  Rng rng(seed);
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  while (total < n) {
    std::size_t s = min_size + static_cast<std::size_t>(rng.below(max_size - min_size + 1));
    s = std::min(s, n - total);
    sizes.push_back(s);
    total += s;
  }
  return sizes;
}

// Clustered graph: blocks of varying size with dense insides and a sparse
// random background giving each node about `out_degree` cross-block edges.
inline CompleteGraph clustered(std::size_t n, std::size_t min_block, std::size_t max_block, double p_in,
                               double out_degree, std::uint64_t seed) {
  auto sizes = random_block_sizes(n, min_block, max_block, derive_seed(seed, "blocks"));
  const double p_out = n > 1 ? std::min(1.0, out_degree / static_cast<double>(n - 1)) : 0.0;
  return planted_partition(sizes, p_in, p_out, derive_seed(seed, "edges"));
}

// Degree-corrected planted partition. Node weights follow a Pareto law with
// exponent alpha, truncated at max_weight. Inside a block the pair (i, j) is
// an edge with probability in_degree * w_i * w_j / W_block, across blocks with
// out_degree * w_i * w_j / W_total, each capped at 1; a node of weight w thus
// expects about w * in_degree inside and w * out_degree outside its block.
inline CompleteGraph degree_corrected_clustered(std::size_t n, std::size_t min_block, std::size_t max_block,
                                                double in_degree, double out_degree, double alpha,
                                                double max_weight, std::uint64_t seed) {
  if (!(alpha > 1.0)) throw ConfigError("alpha must exceed 1");
  if (!(max_weight >= 1.0)) throw ConfigError("max_weight must be at least 1");
  if (in_degree < 0.0 || out_degree < 0.0) throw ConfigError("expected degrees must be non-negative");
  const auto sizes = random_block_sizes(n, min_block, max_block, derive_seed(seed, "blocks"));

  Rng wrng(derive_seed(seed, "weights"));
  std::vector<double> weight(n);
  for (auto& w : weight) w = std::min(max_weight, std::pow(1.0 - wrng.uniform(), -1.0 / (alpha - 1.0)));

  std::vector<std::size_t> block(n);
  std::vector<double> block_weight;
  double total_weight = 0.0;
  std::size_t first = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    double sum = 0.0;
    for (std::size_t i = first; i < first + sizes[c]; ++i) {
      block[i] = c;
      sum += weight[i];
    }
    block_weight.push_back(sum);
    total_weight += sum;
    first += sizes[c];
  }

  Rng rng(derive_seed(seed, "edges"));
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = block[i] == block[j] ? in_degree / block_weight[block[i]] : out_degree / total_weight;
      if (rng.bernoulli(std::min(1.0, scale * weight[i] * weight[j])))
        b.add_edge(std::to_string(i), std::to_string(j));
    }
  return b.build();
}

inline CompleteGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  const std::size_t sizes[] = {n};
  return planted_partition(sizes, p, 0.0, seed);
}

// Random bipartite graph; bipartite graphs have no triangles.
inline CompleteGraph random_bipartite(std::size_t left, std::size_t right, double p, std::uint64_t seed) {
  const std::size_t sizes[] = {left, right};
  // two blocks with no inside edges: only the cross edges remain
  return planted_partition(sizes, 0.0, p, seed);
}

}  // namespace mop::gen
