#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxoutprobe/algorithms.hpp"
#include "maxoutprobe/error.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/util.hpp"

namespace mop {

enum class NodeStatus : std::uint8_t { Absent, Candidate, Explored };

// How an observed graph came to be. BernoulliNode selects each node
// independently; the other four are the stock observation methods.
enum class SamplerKind { None, RandNode, RandEdge, RandomWalk, RandomWalkJump, BernoulliNode };

inline std::string_view sampler_name(SamplerKind k) {
  switch (k) {
    case SamplerKind::None: return "none";
    case SamplerKind::RandNode: return "randnode";
    case SamplerKind::RandEdge: return "randedge";
    case SamplerKind::RandomWalk: return "rw";
    case SamplerKind::RandomWalkJump: return "rwj";
    case SamplerKind::BernoulliNode: return "bernoulli-node";
  }
  return "none";
}

inline std::optional<SamplerKind> parse_sampler(std::string_view s) {
  for (auto k : {SamplerKind::None, SamplerKind::RandNode, SamplerKind::RandEdge,
                 SamplerKind::RandomWalk, SamplerKind::RandomWalkJump, SamplerKind::BernoulliNode})
    if (sampler_name(k) == s) return k;
  return std::nullopt;
}

// The incomplete graph: a subgraph of some CompleteGraph, indexed in the same
// node universe, with an exploration status per node. An Explored node's
// neighbor list is its full neighborhood in the complete graph.
class ObservedGraph {
 public:
  ObservedGraph() : labels_(std::make_shared<const NodeLabels>()) {}

  explicit ObservedGraph(const CompleteGraph& g, SamplerKind origin = SamplerKind::None,
                         double target_edge_fraction = 0.0)
      : labels_(g.labels()),
        adj_(g.num_nodes()),
        status_(g.num_nodes(), NodeStatus::Absent),
        origin_(origin),
        target_edge_fraction_(target_edge_fraction) {}

  std::size_t universe_size() const { return status_.size(); }
  std::size_t num_nodes() const { return n_present_; }
  std::size_t num_edges() const { return n_edges_; }
  std::size_t num_explored() const { return n_explored_; }

  bool contains(NodeId u) const { return u < status_.size() && status_[u] != NodeStatus::Absent; }

  NodeStatus status(NodeId u) const { return u < status_.size() ? status_[u] : NodeStatus::Absent; }

  std::span<const NodeId> neighbors(NodeId u) const {
    if (!contains(u)) throw UnknownNodeError("node " + describe(u) + " is not observed");
    return adj_[u];
  }

  std::size_t degree(NodeId u) const { return neighbors(u).size(); }

  bool has_edge(NodeId u, NodeId v) const {
    if (!contains(u) || !contains(v)) return false;
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  // Adds u as a Candidate if absent. Returns true when u is new.
  bool add_node(NodeId u) {
    check_index(u);
    if (status_[u] != NodeStatus::Absent) return false;
    status_[u] = NodeStatus::Candidate;
    ++n_present_;
    return true;
  }

  void mark_explored(NodeId u) {
    add_node(u);
    if (status_[u] == NodeStatus::Explored) return;
    status_[u] = NodeStatus::Explored;
    ++n_explored_;
  }

  // Inserts the undirected edge, adding absent endpoints as Candidates.
  // Returns true when the edge is new.
  bool add_edge(NodeId u, NodeId v) {
    check_index(u);
    check_index(v);
    if (u == v) throw Error("self-loop " + describe(u));
    add_node(u);
    add_node(v);
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return false;
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++n_edges_;
    return true;
  }

  // Present nodes in ascending index order.
  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    out.reserve(n_present_);
    for (NodeId u = 0; u < status_.size(); ++u)
      if (status_[u] != NodeStatus::Absent) out.push_back(u);
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(n_edges_);
    for (NodeId u = 0; u < adj_.size(); ++u)
      for (NodeId v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  const std::shared_ptr<const NodeLabels>& labels() const { return labels_; }
  const std::string& label(NodeId u) const { return labels_->name(u); }

  SamplerKind origin() const { return origin_; }
  double target_edge_fraction() const { return target_edge_fraction_; }

  friend bool operator==(const ObservedGraph& a, const ObservedGraph& b) {
    return a.labels_ == b.labels_ && a.status_ == b.status_ && a.adj_ == b.adj_ &&
           a.origin_ == b.origin_ && a.target_edge_fraction_ == b.target_edge_fraction_;
  }

 private:
  void check_index(NodeId u) const {
    if (u >= status_.size()) throw UnknownNodeError("unknown node index " + std::to_string(u));
  }

  std::string describe(NodeId u) const {
    return u < labels_->size() ? "'" + labels_->name(u) + "'" : "#" + std::to_string(u);
  }

  std::shared_ptr<const NodeLabels> labels_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<NodeStatus> status_;
  std::size_t n_present_ = 0;
  std::size_t n_edges_ = 0;
  std::size_t n_explored_ = 0;
  SamplerKind origin_ = SamplerKind::None;
  double target_edge_fraction_ = 0.0;
};

// Checks that obs is a subgraph of g and that every Explored node carries its
// complete neighborhood. Returns an empty string when consistent.
inline std::string check_consistency(const CompleteGraph& g, const ObservedGraph& obs) {
  if (obs.labels() != g.labels()) return "observed graph belongs to a different node universe";
  for (NodeId u : obs.nodes()) {
    auto nb = obs.neighbors(u);
    for (NodeId v : nb) {
      if (!g.has_edge(u, v)) return "edge " + g.label(u) + " " + g.label(v) + " is not in the graph";
      if (!obs.has_edge(v, u)) return "asymmetric edge at " + g.label(u);
    }
    if (obs.status(u) == NodeStatus::Explored && nb.size() != g.degree(u))
      return "explored node " + g.label(u) + " is missing neighbors";
  }
  return {};
}

// Unexplored nodes exactly two hops from candidate u and not adjacent to it:
// the open-wedge partners that might close once u is probed. Sorted by index.
inline std::vector<NodeId> two_hop_open_wedges(const ObservedGraph& obs, NodeId u) {
  if (obs.status(u) != NodeStatus::Candidate)
    throw UnknownNodeError("two-hop wedges need a candidate node, got index " + std::to_string(u));
  auto nu = obs.neighbors(u);
  std::vector<NodeId> out;
  for (NodeId x : nu) {
    for (NodeId w : obs.neighbors(x)) {
      if (w == u || obs.status(w) != NodeStatus::Candidate) continue;
      if (std::binary_search(nu.begin(), nu.end(), w)) continue;
      out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Text form: '#' header lines carrying metadata, an [edges] section of label
// pairs, and a [status] section of "label E|C" lines.
inline void write_observed(std::ostream& out, const ObservedGraph& obs) {
  out << "# observed-graph v1\n";
  out << "# origin " << sampler_name(obs.origin()) << '\n';
  out << "# target_edge_fraction " << format_double(obs.target_edge_fraction()) << '\n';
  out << "[edges]\n";
  for (auto [u, v] : obs.edges()) out << obs.label(u) << ' ' << obs.label(v) << '\n';
  out << "[status]\n";
  for (NodeId u : obs.nodes())
    out << obs.label(u) << ' ' << (obs.status(u) == NodeStatus::Explored ? 'E' : 'C') << '\n';
}

inline ObservedGraph read_observed(std::istream& in, const CompleteGraph& g) {
  enum class Section { Header, Edges, Status } section = Section::Header;
  SamplerKind origin = SamplerKind::None;
  double target = 0.0;
  std::vector<Edge> edges;
  std::vector<std::pair<NodeId, NodeStatus>> statuses;

  auto lookup = [&](std::string_view label, std::size_t lineno) {
    auto id = g.find(label);
    if (!id) throw ParseError(lineno, "node '" + std::string(label) + "' is not in the graph");
    return *id;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim_left(line);
    if (body.empty()) continue;
    auto tokens = split_ws(body);
    if (body.front() == '#') {
      if (tokens.size() == 3 && tokens[1] == "origin") {
        auto k = parse_sampler(tokens[2]);
        if (!k) throw ParseError(lineno, "unknown origin '" + std::string(tokens[2]) + "'");
        origin = *k;
      } else if (tokens.size() == 3 && tokens[1] == "target_edge_fraction") {
        auto v = parse_double(tokens[2]);
        if (!v) throw ParseError(lineno, "bad target_edge_fraction");
        target = *v;
      }
      continue;
    }
    if (tokens.size() == 1 && tokens[0] == "[edges]") {
      section = Section::Edges;
      continue;
    }
    if (tokens.size() == 1 && tokens[0] == "[status]") {
      section = Section::Status;
      continue;
    }
    if (tokens.size() != 2) throw ParseError(lineno, "expected 2 fields");
    switch (section) {
      case Section::Header:
        throw ParseError(lineno, "data before [edges] section");
      case Section::Edges: {
        NodeId u = lookup(tokens[0], lineno);
        NodeId v = lookup(tokens[1], lineno);
        if (u == v || !g.has_edge(u, v)) throw ParseError(lineno, "edge is not in the graph");
        edges.emplace_back(u, v);
        break;
      }
      case Section::Status: {
        NodeId u = lookup(tokens[0], lineno);
        if (tokens[1] == "E")
          statuses.emplace_back(u, NodeStatus::Explored);
        else if (tokens[1] == "C")
          statuses.emplace_back(u, NodeStatus::Candidate);
        else
          throw ParseError(lineno, "status must be E or C");
        break;
      }
    }
  }

  ObservedGraph obs(g, origin, target);
  for (auto [u, v] : edges) obs.add_edge(u, v);
  std::vector<bool> listed(g.num_nodes(), false);
  for (auto [u, s] : statuses) {
    if (!obs.contains(u)) throw ParseError(0, "status given for node '" + g.label(u) + "' without edges");
    listed[u] = true;
    if (s == NodeStatus::Explored) obs.mark_explored(u);
  }
  for (NodeId u : obs.nodes())
    if (!listed[u]) throw ParseError(0, "node '" + g.label(u) + "' has no status");
  if (auto err = check_consistency(g, obs); !err.empty()) throw ParseError(0, err);
  return obs;
}

}  // namespace mop
