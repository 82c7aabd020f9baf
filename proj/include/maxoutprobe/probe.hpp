#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "maxoutprobe/error.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/observed.hpp"

namespace mop {

enum class Phase { Estimation, Selection };

inline std::string_view phase_name(Phase p) {
  return p == Phase::Estimation ? "estimation" : "selection";
}

struct ProbeRecord {
  NodeId node = kNoNode;
  std::size_t new_nodes = 0;
  std::size_t new_edges = 0;
  Phase phase = Phase::Selection;
};

// Budget accounting for one trial. Every probe, whatever its phase, is
// charged here; spent() == log().size() always.
class ProbeLedger {
 public:
  explicit ProbeLedger(std::size_t budget) : budget_(budget) {}

  std::size_t budget() const { return budget_; }
  std::size_t spent() const { return log_.size(); }
  std::size_t remaining() const { return budget_ - log_.size(); }
  bool exhausted() const { return log_.size() >= budget_; }
  const std::vector<ProbeRecord>& log() const { return log_; }

  std::size_t spent_in(Phase p) const {
    return static_cast<std::size_t>(
        std::count_if(log_.begin(), log_.end(), [p](const ProbeRecord& r) { return r.phase == p; }));
  }

 private:
  friend struct ProbeAccess;
  std::vector<ProbeRecord> log_;
  std::size_t budget_;
};

struct ProbeAccess {
  static void record(ProbeLedger& l, ProbeRecord r) { l.log_.push_back(r); }
};

struct ProbeResult {
  std::vector<NodeId> new_nodes;
  std::vector<Edge> new_edges;
};

// Reveals every neighbor of candidate u in the complete graph: all of u's
// edges enter obs, unseen neighbors join as Candidates, u becomes Explored.
// Edges among u's neighbors stay hidden.
inline ProbeResult probe(const CompleteGraph& g, ObservedGraph& obs, ProbeLedger& ledger, NodeId u,
                         Phase phase = Phase::Selection) {
  if (ledger.exhausted())
    throw ProbeError(ProbeFailure::BudgetExhausted,
                     "probe budget of " + std::to_string(ledger.budget()) + " is exhausted");
  if (!obs.contains(u))
    throw ProbeError(ProbeFailure::NotObserved, "only observed nodes can be probed (index " +
                                                    std::to_string(u) + ")");
  if (obs.status(u) == NodeStatus::Explored)
    throw ProbeError(ProbeFailure::AlreadyExplored, "node '" + obs.label(u) + "' is already explored");

  ProbeResult r;
  for (NodeId w : g.neighbors(u)) {
    if (obs.add_node(w)) r.new_nodes.push_back(w);
    if (obs.add_edge(u, w)) r.new_edges.emplace_back(u, w);
  }
  obs.mark_explored(u);
  ProbeAccess::record(ledger, {u, r.new_nodes.size(), r.new_edges.size(), phase});
  return r;
}

// Candidate (observed, unexplored) nodes in ascending label order.
inline std::vector<NodeId> candidates(const ObservedGraph& obs) {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < obs.universe_size(); ++u)
    if (obs.status(u) == NodeStatus::Candidate) out.push_back(u);
  const auto& labels = *obs.labels();
  std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) { return labels.label_less(a, b); });
  return out;
}

inline void write_probe_log(std::ostream& out, const ProbeLedger& ledger, const NodeLabels& labels) {
  out << "phase,node,new_nodes,new_edges,spent_after\n";
  std::size_t spent = 0;
  for (const auto& r : ledger.log()) {
    ++spent;
    out << phase_name(r.phase) << ',' << labels.name(r.node) << ',' << r.new_nodes << ','
        << r.new_edges << ',' << spent << '\n';
  }
}

}  // namespace mop
