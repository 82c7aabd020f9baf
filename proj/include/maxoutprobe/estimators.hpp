#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxoutprobe/algorithms.hpp"
#include "maxoutprobe/error.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/observed.hpp"
#include "maxoutprobe/probe.hpp"
#include "maxoutprobe/random.hpp"

namespace mop {

enum class EstimateMethod { ProbeBased, KnownNodeSample, KnownEdgeSample };

inline std::string_view method_name(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::ProbeBased: return "probe-based";
    case EstimateMethod::KnownNodeSample: return "known-node-sample";
    case EstimateMethod::KnownEdgeSample: return "known-edge-sample";
  }
  return "probe-based";
}

// Graph statistics that drive out-degree scoring. The true degree of a
// candidate with observed degree d is estimated as m_hat * d.
struct EstimateSet {
  double m_hat = 1.0;
  double c_hat = 0.0;
  std::size_t probes_used = 0;
  EstimateMethod method = EstimateMethod::ProbeBased;
  bool m_hat_clamped = false;
  bool c_hat_clamped = false;
};

struct ClampedRatio {
  double value = 0.0;
  bool clamped = false;
};

inline ClampedRatio clamp_unit(double v) {
  if (v > 1.0) return {1.0, true};
  if (v < 0.0) return {0.0, true};
  return {v, false};
}

// ---------------------------------------------------------------------------
// Probe-based estimation

// One estimation probe: the node's degrees before and after, and its open-wedge
// partners just before it was probed together with how many of them closed.
struct EstimationProbe {
  NodeId node = kNoNode;
  std::size_t observed_degree = 0;
  std::size_t true_degree = 0;
  std::vector<NodeId> two_hop_before;
  std::size_t closed = 0;
};

struct ScaleEstimate {
  double m_hat = 1.0;
  bool clamped = false;
  std::vector<EstimationProbe> probes;
};

// The `pool` highest-observed-degree candidates, ties by ascending label.
inline std::vector<NodeId> top_degree_candidates(const ObservedGraph& obs, std::size_t pool) {
  auto cands = candidates(obs);
  const auto& labels = *obs.labels();
  pool = std::min(pool, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(pool), cands.end(),
                    [&](NodeId a, NodeId b) {
                      auto da = obs.degree(a), db = obs.degree(b);
                      if (da != db) return da > db;
                      return labels.label_less(a, b);
                    });
  cands.resize(pool);
  return cands;
}

inline double mean_degree_ratio(std::span<const EstimationProbe> probes) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : probes) {
    if (p.observed_degree == 0) continue;
    sum += static_cast<double>(p.true_degree) / static_cast<double>(p.observed_degree);
    ++n;
  }
  return n ? sum / static_cast<double>(n) : 1.0;
}

// Probes a uniform random subset of the ledger.budget() highest-degree
// candidates and averages true/observed degree over them. Mutates obs and
// charges the ledger with Estimation-phase probes.
inline ScaleEstimate estimate_scale_factor(const CompleteGraph& g, ObservedGraph& obs, ProbeLedger& ledger,
                                           std::size_t n_probes, std::uint64_t seed) {
  if (n_probes == 0) throw EstimationError("estimation needs at least one probe");
  if (n_probes > ledger.remaining())
    throw EstimationError("estimation wants " + std::to_string(n_probes) + " probes but only " +
                          std::to_string(ledger.remaining()) + " remain");
  auto pool = top_degree_candidates(obs, ledger.budget());
  if (pool.empty()) throw EstimationError("observed graph has no candidate nodes");

  Rng rng(seed);
  const std::size_t k = std::min(n_probes, pool.size());
  rng.partial_shuffle(pool, k);

  ScaleEstimate est;
  est.probes.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    EstimationProbe p;
    p.node = pool[i];
    p.observed_degree = obs.degree(p.node);
    p.true_degree = g.degree(p.node);
    p.two_hop_before = two_hop_open_wedges(obs, p.node);
    probe(g, obs, ledger, p.node, Phase::Estimation);
    p.closed = count_common(p.two_hop_before, g.neighbors(p.node));
    est.probes.push_back(std::move(p));
  }
  const double ratio = mean_degree_ratio(est.probes);
  est.clamped = ratio < 1.0;
  est.m_hat = std::max(1.0, ratio);
  return est;
}

// Fraction of pre-probe open-wedge partners that the probes revealed as true
// neighbors; 0 when no probed node had any.
inline double estimate_avg_clustering(std::span<const EstimationProbe> probes) {
  std::size_t closed = 0, total = 0;
  for (const auto& p : probes) {
    closed += p.closed;
    total += p.two_hop_before.size();
  }
  return total ? static_cast<double>(closed) / static_cast<double>(total) : 0.0;
}

inline EstimateSet estimate_probe_based(const CompleteGraph& g, ObservedGraph& obs, ProbeLedger& ledger,
                                        std::size_t n_probes, std::uint64_t seed) {
  auto scale = estimate_scale_factor(g, obs, ledger, n_probes, seed);
  EstimateSet e;
  e.method = EstimateMethod::ProbeBased;
  e.m_hat = scale.m_hat;
  e.m_hat_clamped = scale.clamped;
  e.c_hat = estimate_avg_clustering(scale.probes);
  e.probes_used = scale.probes.size();
  return e;
}

// ---------------------------------------------------------------------------
// Closed-form estimators for samples of known type and size

namespace detail {
inline void require_fraction(double f, const char* name) {
  if (!(f > 0.0 && f <= 1.0))
    throw EstimationError(std::string(name) + " must lie in (0, 1], got " + format_double(f));
}
inline void require_probability(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw EstimationError("fraction must lie in [0, 1], got " + format_double(f));
}
}  // namespace detail

// For a node observed only through a selected neighbor.
inline double unbiased_degree_node_sampling(double d_known, double f_n) {
  detail::require_fraction(f_n, "f_N");
  return d_known / f_n;
}

inline double unbiased_degree_edge_sampling(double d_known, double f_e) {
  detail::require_fraction(f_e, "f_E");
  return d_known / f_e;
}

// A triangle survives node sampling when at least two corners are selected.
inline double triangle_survival_prob(double f_n) {
  detail::require_probability(f_n);
  return 3.0 * f_n * f_n * (1.0 - f_n) + f_n * f_n * f_n;
}

// A wedge survives when at least two nodes, or only its center, are selected.
inline double wedge_survival_prob(double f_n) {
  detail::require_probability(f_n);
  const double q = 1.0 - f_n;
  return f_n * f_n * f_n + 3.0 * (f_n * f_n * q) + f_n * q * q;
}

struct SurvivalProbs {
  double p_t = 0.0;
  double p_w = 0.0;
  // Probability that a surviving wedge of a triangle is observed closed.
  double p_closed = 0.0;
};

inline SurvivalProbs survival_probs(double f_n) {
  SurvivalProbs s{triangle_survival_prob(f_n), wedge_survival_prob(f_n), 0.0};
  if (s.p_w > 0.0) s.p_closed = s.p_t / s.p_w;
  return s;
}

inline ClampedRatio unbiased_clustering_node_sampling(double c_obs, double f_n) {
  detail::require_fraction(f_n, "f_N");
  const auto s = survival_probs(f_n);
  if (s.p_t == 0.0) throw EstimationError("triangle survival probability is zero");
  return clamp_unit(s.p_w / s.p_t * c_obs);
}

inline ClampedRatio unbiased_clustering_edge_sampling(double c_obs, double f_e) {
  detail::require_fraction(f_e, "f_E");
  return clamp_unit(c_obs / f_e);
}

// Estimates without spending budget when obs is a random node sample that
// selected fraction f_n of the nodes.
inline EstimateSet estimate_known_node_sample(const ObservedGraph& obs, double f_n) {
  EstimateSet e;
  e.method = EstimateMethod::KnownNodeSample;
  e.m_hat = unbiased_degree_node_sampling(1.0, f_n);
  auto c = unbiased_clustering_node_sampling(global_clustering(obs), f_n);
  e.c_hat = c.value;
  e.c_hat_clamped = c.clamped;
  return e;
}

inline EstimateSet estimate_known_edge_sample(const ObservedGraph& obs, double f_e) {
  EstimateSet e;
  e.method = EstimateMethod::KnownEdgeSample;
  e.m_hat = unbiased_degree_edge_sampling(1.0, f_e);
  auto c = unbiased_clustering_edge_sampling(global_clustering(obs), f_e);
  e.c_hat = c.value;
  e.c_hat_clamped = c.clamped;
  return e;
}

}  // namespace mop
