#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "maxoutprobe/algorithms.hpp"
#include "maxoutprobe/generators.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/observed.hpp"
#include "oracles.hpp"

using namespace mop;
using oracle::make_graph;

namespace {

CompleteGraph k4() { return make_graph({{"1", "2"}, {"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}, {"3", "4"}}); }

CompleteGraph load(const std::string& text, LoadReport* report = nullptr) {
  std::istringstream in(text);
  return load_edge_list(in, report);
}

}  // namespace

TEST(LoadEdgeList, DropsDuplicateEdges) {
  LoadReport report;
  auto g = load("a b\nb c\na b\n", &report);
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(report.duplicates, 1u);
  EXPECT_EQ(report.edges_read, 3u);
}

TEST(LoadEdgeList, ReversedDuplicateIsDropped) {
  LoadReport report;
  auto g = load("a b\nb a\n", &report);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(report.duplicates, 1u);
}

TEST(LoadEdgeList, SelfLoopOnlyInputHasNoEdges) { EXPECT_THROW(load("a a\n"), Error); }

TEST(LoadEdgeList, EmptyInputIsAnError) {
  EXPECT_THROW(load(""), Error);
  EXPECT_THROW(load("# only a comment\n\n"), Error);
}

TEST(LoadEdgeList, CompleteGraphOnFourLabels) {
  auto g = load("w x\nw y\nw z\nx y\nx z\ny z\n");
  EXPECT_EQ(g.num_nodes(), 4u);
  EXPECT_EQ(g.num_edges(), 6u);
}

TEST(LoadEdgeList, MalformedLineReportsLineNumber) {
  try {
    load("# header\na b\na b c\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(load("a\n"), ParseError);
}

TEST(LoadEdgeList, SkipsCommentsAndBlankLinesAndKeepsFirstAppearanceOrder) {
  LoadReport report;
  auto g = load("# c\n\n  zed alpha\n\talpha mid\n", &report);
  EXPECT_EQ(g.label(0), "zed");
  EXPECT_EQ(g.label(1), "alpha");
  EXPECT_EQ(g.label(2), "mid");
  EXPECT_EQ(report.lines, 4u);
}

TEST(LoadEdgeList, SelfLoopNodeIsNotRepresented) {
  LoadReport report;
  auto g = load("a b\nc c\n", &report);
  EXPECT_EQ(report.self_loops, 1u);
  EXPECT_FALSE(g.find("c").has_value());
  EXPECT_THROW(g.at("c"), UnknownNodeError);
}

TEST(Degree, Examples) {
  auto g = k4();
  for (NodeId u = 0; u < 4; ++u) EXPECT_EQ(degree(g, u), 3u);
  auto path = make_graph({{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(degree(path, path.at("b")), 2u);
  EXPECT_THROW(degree(path, 17), UnknownNodeError);
}

TEST(Degree, WorksOnObservedGraphs) {
  auto g = k4();
  ObservedGraph obs(g);
  obs.add_edge(0, 1);
  EXPECT_EQ(degree(obs, 0), 1u);
  EXPECT_THROW(degree(obs, 2), UnknownNodeError);
}

TEST(TrianglesWedges, Examples) {
  auto k3 = make_graph({{"a", "b"}, {"b", "c"}, {"a", "c"}});
  auto tw = count_triangles_wedges(k3);
  EXPECT_EQ(tw.triangles, 1u);
  EXPECT_EQ(tw.wedges, 3u);

  auto path = make_graph({{"a", "b"}, {"b", "c"}});
  tw = count_triangles_wedges(path);
  EXPECT_EQ(tw.triangles, 0u);
  EXPECT_EQ(tw.wedges, 1u);

  auto k4m = make_graph({{"1", "2"}, {"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}});
  tw = count_triangles_wedges(k4m);
  EXPECT_EQ(tw.triangles, 2u);
  EXPECT_EQ(tw.wedges, 8u);
}

TEST(GlobalClustering, Examples) {
  EXPECT_DOUBLE_EQ(global_clustering(make_graph({{"a", "b"}, {"b", "c"}, {"a", "c"}})), 1.0);
  EXPECT_DOUBLE_EQ(global_clustering(make_graph({{"a", "b"}, {"b", "c"}})), 0.0);
  EXPECT_DOUBLE_EQ(global_clustering(make_graph({{"1", "2"}, {"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}})), 0.75);
  EXPECT_DOUBLE_EQ(global_clustering(make_graph({{"a", "b"}})), 0.0);
}

TEST(LocalClustering, Examples) {
  auto g = k4();
  for (NodeId u = 0; u < 4; ++u) EXPECT_DOUBLE_EQ(local_clustering(g, u), 1.0);
  auto star = make_graph({{"c", "x"}, {"c", "y"}, {"c", "z"}});
  EXPECT_DOUBLE_EQ(local_clustering(star, star.at("c")), 0.0);
  EXPECT_DOUBLE_EQ(local_clustering(star, star.at("x")), 0.0);
  auto h = make_graph({{"u", "a"}, {"u", "b"}, {"u", "c"}, {"a", "b"}});
  EXPECT_DOUBLE_EQ(local_clustering(h, h.at("u")), 1.0 / 3.0);
  EXPECT_THROW(local_clustering(h, 99), UnknownNodeError);
}

TEST(TwoHopOpenWedges, Examples) {
  auto g = make_graph({{"u", "a"}, {"a", "w"}, {"u", "b"}, {"b", "w"}, {"a", "x"}});
  ObservedGraph obs(g);
  for (auto [x, y] : g.edges()) obs.add_edge(x, y);
  const NodeId u = g.at("u"), w = g.at("w"), x = g.at("x");
  auto wu = two_hop_open_wedges(obs, u);
  EXPECT_EQ(wu, (std::vector<NodeId>{std::min(w, x), std::max(w, x)}));

  obs.mark_explored(w);
  EXPECT_EQ(two_hop_open_wedges(obs, u), std::vector<NodeId>{x});

  auto k3 = make_graph({{"u", "a"}, {"a", "b"}, {"u", "b"}});
  ObservedGraph o3(k3);
  for (auto [p, q] : k3.edges()) o3.add_edge(p, q);
  EXPECT_TRUE(two_hop_open_wedges(o3, k3.at("u")).empty());
}

TEST(TwoHopOpenWedges, RejectsExploredOrAbsentNodes) {
  auto g = make_graph({{"u", "a"}, {"a", "w"}, {"z", "y"}});
  ObservedGraph obs(g);
  obs.add_edge(g.at("u"), g.at("a"));
  obs.add_edge(g.at("a"), g.at("w"));
  EXPECT_THROW(two_hop_open_wedges(obs, g.at("z")), Error);
  obs.mark_explored(g.at("u"));
  EXPECT_THROW(two_hop_open_wedges(obs, g.at("u")), Error);
}

// ---------------------------------------------------------------------------
// Properties

TEST(GraphProperties, SymmetricSimpleAndEdgeCountMatchesDegreeSum) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto g = oracle::random_graph(30, 0.15, rng);
    std::size_t sum = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      auto nb = g.neighbors(u);
      sum += nb.size();
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
      for (NodeId v : nb) {
        EXPECT_NE(u, v);
        EXPECT_TRUE(g.has_edge(v, u));
      }
    }
    EXPECT_EQ(sum, 2 * g.num_edges());
  }
}

TEST(GraphProperties, TrianglesAndWedgesMatchTripleEnumeration) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng() % 48;
    auto g = oracle::random_graph(n, 0.05 + 0.5 * std::uniform_real_distribution<>()(rng), rng);
    auto m = oracle::matrix_of(g);
    auto tw = count_triangles_wedges(g);
    EXPECT_EQ(tw.triangles, oracle::triangles(m));
    EXPECT_EQ(tw.wedges, oracle::wedges(m));
    EXPECT_LE(3 * tw.triangles, tw.wedges);
    for (NodeId u = 0; u < g.num_nodes(); ++u) EXPECT_DOUBLE_EQ(local_clustering(g, u), oracle::local_clustering(m, u));
  }
}

TEST(GraphProperties, CliqueUnionsHaveEveryWedgeClosed) {
  for (std::size_t n = 3; n <= 9; ++n) {
    GraphBuilder b;
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          b.add_edge(std::to_string(c) + ":" + std::to_string(i), std::to_string(c) + ":" + std::to_string(j));
    auto g = b.build();
    auto tw = count_triangles_wedges(g);
    EXPECT_EQ(3 * tw.triangles, tw.wedges);
    EXPECT_DOUBLE_EQ(global_clustering(g), 1.0);
  }
}

TEST(GraphProperties, StrictInequalityWhenSomeWedgeIsOpen) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    auto g = oracle::random_graph(20, 0.2, rng);
    auto m = oracle::matrix_of(g);
    bool open = false;
    for (std::size_t c = 0; c < m.size(); ++c)
      for (std::size_t x = 0; x < m.size(); ++x)
        for (std::size_t y = x + 1; y < m.size(); ++y)
          if (m[c][x] && m[c][y] && !m[x][y]) open = true;
    auto tw = count_triangles_wedges(g);
    EXPECT_EQ(open, 3 * tw.triangles < tw.wedges);
  }
}

TEST(GraphProperties, TriangleFreeGraphsHaveZeroClustering) {
  auto g = gen::random_bipartite(30, 30, 0.2, 5);
  EXPECT_EQ(count_triangles_wedges(g).triangles, 0u);
  EXPECT_DOUBLE_EQ(global_clustering(g), 0.0);
}

TEST(GraphProperties, TwoHopMatchesBreadthFirstSearch) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    auto g = oracle::random_graph(5 + rng() % 45, 0.12, rng);
    auto obs = oracle::random_observed(g, rng);
    for (NodeId u = 0; u < obs.universe_size(); ++u) {
      if (obs.status(u) != NodeStatus::Candidate) continue;
      auto wu = two_hop_open_wedges(obs, u);
      EXPECT_EQ(wu, oracle::two_hop(obs, u));
      for (NodeId w : wu) {
        EXPECT_NE(w, u);
        EXPECT_FALSE(obs.has_edge(u, w));
        EXPECT_NE(obs.status(w), NodeStatus::Explored);
      }
    }
  }
}
