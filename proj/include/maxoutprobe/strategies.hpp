#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxoutprobe/algorithms.hpp"
#include "maxoutprobe/community.hpp"
#include "maxoutprobe/error.hpp"
#include "maxoutprobe/estimators.hpp"
#include "maxoutprobe/observed.hpp"
#include "maxoutprobe/probe.hpp"
#include "maxoutprobe/random.hpp"

namespace mop {

enum class StrategyKind { MaxOutProbe, HighDeg, LowDeg, HighDisp, LowDisp, CrossComm, HighCC, LowCC, Random };

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::MaxOutProbe, StrategyKind::HighDeg,   StrategyKind::LowDeg,
    StrategyKind::HighDisp,    StrategyKind::LowDisp,   StrategyKind::CrossComm,
    StrategyKind::HighCC,      StrategyKind::LowCC,     StrategyKind::Random};

inline std::string_view strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::MaxOutProbe: return "maxoutprobe";
    case StrategyKind::HighDeg: return "highdeg";
    case StrategyKind::LowDeg: return "lowdeg";
    case StrategyKind::HighDisp: return "highdisp";
    case StrategyKind::LowDisp: return "lowdisp";
    case StrategyKind::CrossComm: return "crosscomm";
    case StrategyKind::HighCC: return "highcc";
    case StrategyKind::LowCC: return "lowcc";
    case StrategyKind::Random: return "random";
  }
  return "random";
}

inline std::optional<StrategyKind> parse_strategy(std::string_view s) {
  for (auto k : kAllStrategies)
    if (strategy_name(k) == s) return k;
  return std::nullopt;
}

enum class Direction { High, Low };

// Ranking key for one candidate; higher ranks first.
struct CandidateScore {
  NodeId node = kNoNode;
  double score = 0.0;
};

// Out-degree estimate of one candidate: d_out = max(0, d_hat - d_known - c_hat * w_u).
struct OutDegreeScore {
  NodeId node = kNoNode;
  double d_hat = 0.0;
  std::size_t d_known = 0;
  std::size_t w_u = 0;
  double d_out = 0.0;
};

struct ProbePlan {
  StrategyKind strategy = StrategyKind::Random;
  std::vector<NodeId> nodes;
  std::vector<double> scores;
};

inline std::vector<OutDegreeScore> score_max_out_probe(const ObservedGraph& obs, const EstimateSet& est) {
  auto cands = candidates(obs);
  if (cands.empty()) throw Error("observed graph has no candidate nodes");
  std::vector<OutDegreeScore> out;
  out.reserve(cands.size());
  for (NodeId u : cands) {
    OutDegreeScore s;
    s.node = u;
    s.d_known = obs.degree(u);
    s.d_hat = est.m_hat * static_cast<double>(s.d_known);
    s.w_u = two_hop_open_wedges(obs, u).size();
    const double raw = s.d_hat - static_cast<double>(s.d_known) - est.c_hat * static_cast<double>(s.w_u);
    s.d_out = std::max(0.0, raw);
    out.push_back(s);
  }
  return out;
}

inline std::vector<CandidateScore> ranking_scores(std::span<const OutDegreeScore> scores) {
  std::vector<CandidateScore> out;
  out.reserve(scores.size());
  for (const auto& s : scores) out.push_back({s.node, s.d_out});
  return out;
}

// The b highest scores, ties by ascending label; fewer if scores run out.
inline ProbePlan select_top_b(std::span<const CandidateScore> scores, std::size_t b, const NodeLabels& labels,
                              StrategyKind tag = StrategyKind::MaxOutProbe) {
  if (b == 0) throw ConfigError("selection budget must be at least 1");
  std::vector<CandidateScore> ranked(scores.begin(), scores.end());
  const std::size_t k = std::min(b, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(),
                    [&](const CandidateScore& a, const CandidateScore& c) {
                      if (a.score != c.score) return a.score > c.score;
                      return labels.label_less(a.node, c.node);
                    });
  ProbePlan plan;
  plan.strategy = tag;
  for (std::size_t i = 0; i < k; ++i) {
    plan.nodes.push_back(ranked[i].node);
    plan.scores.push_back(ranked[i].score);
  }
  return plan;
}

namespace detail {
inline double signed_score(double v, Direction d) { return d == Direction::High ? v : -v; }
}  // namespace detail

inline std::vector<CandidateScore> score_degree(const ObservedGraph& obs, Direction dir) {
  std::vector<CandidateScore> out;
  for (NodeId u : candidates(obs))
    out.push_back({u, detail::signed_score(static_cast<double>(obs.degree(u)), dir)});
  return out;
}

// Pairs {s, t} of common neighbors of u and v that are not adjacent and share
// no common neighbor other than u and v.
inline std::size_t edge_dispersion(const ObservedGraph& obs, NodeId u, NodeId v) {
  if (!obs.has_edge(u, v)) throw Error("dispersion is defined on observed edges only");
  const auto common = common_neighbors(obs.neighbors(u), obs.neighbors(v));
  std::size_t count = 0;
  for (std::size_t i = 0; i < common.size(); ++i) {
    const NodeId s = common[i];
    auto ns = obs.neighbors(s);
    for (std::size_t j = i + 1; j < common.size(); ++j) {
      const NodeId t = common[j];
      if (std::binary_search(ns.begin(), ns.end(), t)) continue;
      // s and t both neighbor u and v, so those two always appear here
      if (count_common(ns, obs.neighbors(t)) == 2) ++count;
    }
  }
  return count;
}

inline std::vector<CandidateScore> score_dispersion(const ObservedGraph& obs, Direction dir) {
  std::vector<CandidateScore> out;
  for (NodeId u : candidates(obs)) {
    auto nb = obs.neighbors(u);
    double mean = 0.0;
    if (!nb.empty()) {
      double sum = 0.0;
      for (NodeId v : nb) sum += static_cast<double>(edge_dispersion(obs, u, v));
      mean = sum / static_cast<double>(nb.size());
    }
    out.push_back({u, detail::signed_score(mean, dir)});
  }
  return out;
}

inline std::vector<CandidateScore> score_cross_comm(const ObservedGraph& obs, const Partition& partition) {
  auto community_of = [&](NodeId u) {
    if (u >= partition.community.size() || partition.community[u] == kNoCommunity)
      throw Error("node '" + obs.label(u) + "' is missing from the partition");
    return partition.community[u];
  };
  std::vector<CandidateScore> out;
  for (NodeId u : candidates(obs)) {
    auto nb = obs.neighbors(u);
    double score = 0.0;
    if (!nb.empty()) {
      const auto cu = community_of(u);
      std::size_t outside = 0;
      for (NodeId v : nb)
        if (community_of(v) != cu) ++outside;
      score = static_cast<double>(outside) / static_cast<double>(nb.size());
    }
    out.push_back({u, score});
  }
  return out;
}

inline std::vector<CandidateScore> score_clustering(const ObservedGraph& obs, Direction dir) {
  std::vector<CandidateScore> out;
  for (NodeId u : candidates(obs)) out.push_back({u, detail::signed_score(local_clustering(obs, u), dir)});
  return out;
}

inline ProbePlan select_random(const ObservedGraph& obs, std::size_t b, std::uint64_t seed) {
  if (b == 0) throw ConfigError("selection budget must be at least 1");
  auto cands = candidates(obs);
  Rng rng(seed);
  const std::size_t k = std::min(b, cands.size());
  rng.partial_shuffle(cands, k);
  cands.resize(k);
  ProbePlan plan;
  plan.strategy = StrategyKind::Random;
  plan.nodes = std::move(cands);
  plan.scores.assign(k, 0.0);
  return plan;
}

// ---------------------------------------------------------------------------
// Running a strategy end to end on one observed graph

// What MaxOutProbe may assume about how obs was produced.
enum class KnownSample { None, Node, Edge };

struct StrategyConfig {
  StrategyKind kind = StrategyKind::MaxOutProbe;
  // Estimation probes requested; capped at max(1, floor(b / 2)) when
  // cap_estimation is set.
  std::size_t estimation_probes = 100;
  bool cap_estimation = true;
  // Charge estimation probes to the budget b. When false the ledger grows by
  // the number of estimation probes so selection still gets all of b.
  bool charge_estimation = true;
  KnownSample known = KnownSample::None;
  // f_N (Node) or f_E (Edge) when known != None.
  double known_fraction = 0.0;
};

struct StrategyOutcome {
  ProbePlan plan;
  std::optional<EstimateSet> estimate;
  ProbeLedger ledger{0};
};

inline std::size_t estimation_probe_count(const StrategyConfig& cfg, std::size_t b) {
  if (!cfg.cap_estimation) return cfg.estimation_probes;
  return std::min(cfg.estimation_probes, std::max<std::size_t>(1, b / 2));
}

// Computes the plan for a strategy and executes all of it, estimation
// included. obs is mutated into the augmented graph.
inline StrategyOutcome run_strategy(const CompleteGraph& g, ObservedGraph& obs, const StrategyConfig& cfg,
                                    std::size_t b, std::uint64_t seed) {
  if (b == 0) throw ConfigError("probe budget must be at least 1");
  const auto& labels = *obs.labels();
  StrategyOutcome out;

  if (cfg.kind == StrategyKind::MaxOutProbe) {
    EstimateSet est;
    if (cfg.known == KnownSample::Node) {
      est = estimate_known_node_sample(obs, cfg.known_fraction);
      out.ledger = ProbeLedger(b);
    } else if (cfg.known == KnownSample::Edge) {
      est = estimate_known_edge_sample(obs, cfg.known_fraction);
      out.ledger = ProbeLedger(b);
    } else {
      const std::size_t n_est = estimation_probe_count(cfg, b);
      out.ledger = ProbeLedger(cfg.charge_estimation ? b : b + n_est);
      est = estimate_probe_based(g, obs, out.ledger, std::min(n_est, out.ledger.remaining()),
                                 derive_seed(seed, "estimation"));
    }
    out.estimate = est;
    if (!out.ledger.exhausted() && !candidates(obs).empty()) {
      auto scores = score_max_out_probe(obs, est);
      out.plan = select_top_b(ranking_scores(scores), out.ledger.remaining(), labels, cfg.kind);
    }
  } else {
    out.ledger = ProbeLedger(b);
    const auto sel_seed = derive_seed(seed, "selection");
    std::vector<CandidateScore> scores;
    switch (cfg.kind) {
      case StrategyKind::HighDeg: scores = score_degree(obs, Direction::High); break;
      case StrategyKind::LowDeg: scores = score_degree(obs, Direction::Low); break;
      case StrategyKind::HighDisp: scores = score_dispersion(obs, Direction::High); break;
      case StrategyKind::LowDisp: scores = score_dispersion(obs, Direction::Low); break;
      case StrategyKind::CrossComm: scores = score_cross_comm(obs, detect_communities(obs, sel_seed)); break;
      case StrategyKind::HighCC: scores = score_clustering(obs, Direction::High); break;
      case StrategyKind::LowCC: scores = score_clustering(obs, Direction::Low); break;
      case StrategyKind::Random:
      case StrategyKind::MaxOutProbe: break;
    }
    if (cfg.kind == StrategyKind::Random)
      out.plan = select_random(obs, b, sel_seed);
    else
      out.plan = select_top_b(scores, b, labels, cfg.kind);
  }
  out.plan.strategy = cfg.kind;

  for (NodeId u : out.plan.nodes) probe(g, obs, out.ledger, u, Phase::Selection);
  return out;
}

}  // namespace mop
