#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "maxoutprobe/error.hpp"
#include "maxoutprobe/util.hpp"

namespace mop {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

using Edge = std::pair<NodeId, NodeId>;

// External label <-> dense index table, shared between a complete graph and
// every observed graph drawn from it.
class NodeLabels {
 public:
  NodeLabels() = default;

  explicit NodeLabels(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (NodeId i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
    std::vector<NodeId> order(names_.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return names_[a] < names_[b]; });
    rank_.resize(names_.size());
    for (NodeId r = 0; r < order.size(); ++r) rank_[order[r]] = r;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeId u) const { return names_.at(u); }

  std::optional<NodeId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Position of u in ascending label order; the tie-breaking key everywhere.
  NodeId rank(NodeId u) const { return rank_[u]; }

  bool label_less(NodeId a, NodeId b) const { return rank_[a] < rank_[b]; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<NodeId> rank_;
};

// Immutable undirected simple graph in CSR form. Every node has at least one
// incident edge: nodes only come into existence as edge endpoints.
class CompleteGraph {
 public:
  CompleteGraph() : labels_(std::make_shared<const NodeLabels>()) {}

  std::size_t num_nodes() const { return labels_->size(); }
  std::size_t num_edges() const { return targets_.size() / 2; }
  std::size_t universe_size() const { return num_nodes(); }

  bool contains(NodeId u) const { return u < num_nodes(); }

  std::span<const NodeId> neighbors(NodeId u) const {
    require(u);
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }

  std::size_t degree(NodeId u) const {
    require(u);
    return offsets_[u + 1] - offsets_[u];
  }

  std::size_t max_degree() const { return max_degree_; }

  bool has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  const std::string& label(NodeId u) const { return labels_->name(u); }
  std::optional<NodeId> find(std::string_view label) const { return labels_->find(label); }

  NodeId at(std::string_view label) const {
    auto id = labels_->find(label);
    if (!id) throw UnknownNodeError("unknown node '" + std::string(label) + "'");
    return *id;
  }

  const std::shared_ptr<const NodeLabels>& labels() const { return labels_; }

  // Edges with u < v, in ascending (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (NodeId u = 0; u < num_nodes(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  friend class GraphBuilder;

  void require(NodeId u) const {
    if (!contains(u)) throw UnknownNodeError("unknown node index " + std::to_string(u));
  }

  std::shared_ptr<const NodeLabels> labels_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::size_t max_degree_ = 0;
};

struct LoadReport {
  std::size_t lines = 0;
  std::size_t edges_read = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

// Accumulates labelled edges, dropping self-loops and duplicates. Labels are
// numbered in order of first appearance.
class GraphBuilder {
 public:
  bool add_edge(std::string_view a, std::string_view b) {
    ++report_.edges_read;
    if (a == b) {
      ++report_.self_loops;
      return false;
    }
    const NodeId ia = intern(a);
    const NodeId ib = intern(b);
    raw_.push_back(ordered(ia, ib));
    return true;
  }

  const LoadReport& report() const { return report_; }

  // Throws when no edge survived.
  CompleteGraph build() {
    std::sort(raw_.begin(), raw_.end());
    auto last = std::unique(raw_.begin(), raw_.end());
    report_.duplicates = static_cast<std::size_t>(raw_.end() - last);
    raw_.erase(last, raw_.end());
    if (raw_.empty()) throw Error("graph has no edges");

    const std::size_t n = names_.size();
    CompleteGraph g;
    std::vector<std::size_t> deg(n, 0);
    for (auto [u, v] : raw_) {
      ++deg[u];
      ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.targets_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : raw_) {
      g.targets_[fill[u]++] = v;
      g.targets_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::sort(g.targets_.begin() + g.offsets_[i], g.targets_.begin() + g.offsets_[i + 1]);
      g.max_degree_ = std::max(g.max_degree_, deg[i]);
    }
    g.labels_ = std::make_shared<const NodeLabels>(std::move(names_));
    names_.clear();
    index_.clear();
    raw_.clear();
    return g;
  }

 private:
  static Edge ordered(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  NodeId intern(std::string_view label) {
    auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<NodeId>(names_.size()));
    if (inserted) names_.emplace_back(label);
    return it->second;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> raw_;
  LoadReport report_;
};

// One edge per line, two whitespace-separated labels; '#' lines and blank
// lines are skipped.
inline CompleteGraph load_edge_list(std::istream& in, LoadReport* report = nullptr) {
  GraphBuilder builder;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim_left(line);
    if (body.empty() || body.front() == '#') continue;
    auto tokens = split_ws(body);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw ParseError(lineno, "expected 2 node labels, found " + std::to_string(tokens.size()));
    builder.add_edge(tokens[0], tokens[1]);
  }
  auto g = builder.build();
  if (report) {
    *report = builder.report();
    report->lines = lineno;
  }
  return g;
}

}  // namespace mop
