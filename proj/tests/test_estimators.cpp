#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "maxoutprobe/algorithms.hpp"
#include "maxoutprobe/estimators.hpp"
#include "maxoutprobe/generators.hpp"
#include "maxoutprobe/sampling.hpp"
#include "oracles.hpp"

using namespace mop;

TEST(ScaleFactor, MeanOfRatios) {
  std::vector<EstimationProbe> probes(2);
  probes[0].observed_degree = 4;
  probes[0].true_degree = 8;
  probes[1].observed_degree = 3;
  probes[1].true_degree = 9;
  EXPECT_DOUBLE_EQ(mean_degree_ratio(probes), 2.5);
}

TEST(ScaleFactor, CompleteObservationGivesOne) {
  auto g = gen::clustered(120, 5, 15, 0.5, 2.0, 1);
  auto s = sample_random_edge(g, 1.0, 1);
  ProbeLedger ledger(50);
  auto est = estimate_scale_factor(g, s.graph, ledger, 20, 9);
  EXPECT_EQ(est.m_hat, 1.0);
  EXPECT_FALSE(est.clamped);
  EXPECT_EQ(est.probes.size(), 20u);
  EXPECT_EQ(ledger.spent_in(Phase::Estimation), 20u);
}

TEST(ScaleFactor, ProbesComeFromTheTopBudgetByDegree) {
  auto g = gen::clustered(400, 5, 30, 0.4, 3.0, 2);
  auto s = sample_random_node(g, 0.1, 2);
  const std::size_t b = 15;
  auto pool = top_degree_candidates(s.graph, b);
  ASSERT_EQ(pool.size(), b);
  ProbeLedger ledger(b);
  auto est = estimate_scale_factor(g, s.graph, ledger, 7, 4);
  for (const auto& p : est.probes) {
    EXPECT_NE(std::find(pool.begin(), pool.end(), p.node), pool.end());
    EXPECT_EQ(p.true_degree, g.degree(p.node));
  }
  EXPECT_GE(est.m_hat, 1.0);
}

TEST(ScaleFactor, Errors) {
  auto g = gen::clustered(100, 5, 15, 0.5, 2.0, 3);
  auto s = sample_random_node(g, 0.1, 3);
  ProbeLedger ledger(10);
  EXPECT_THROW(estimate_scale_factor(g, s.graph, ledger, 0, 1), EstimationError);
  EXPECT_THROW(estimate_scale_factor(g, s.graph, ledger, 11, 1), EstimationError);

  auto k2 = oracle::make_graph({{"a", "b"}});
  ObservedGraph done(k2);
  done.add_edge(0, 1);
  done.mark_explored(0);
  done.mark_explored(1);
  ProbeLedger l2(3);
  EXPECT_THROW(estimate_scale_factor(k2, done, l2, 1, 1), EstimationError);
}

TEST(AvgClustering, RatioOfClosedPairs) {
  std::vector<EstimationProbe> probes(2);
  probes[0].two_hop_before.assign(12, 0);
  probes[0].closed = 3;
  probes[1].two_hop_before.assign(8, 0);
  probes[1].closed = 2;
  EXPECT_DOUBLE_EQ(estimate_avg_clustering(probes), 0.25);
  std::vector<EstimationProbe> empty(3);
  EXPECT_DOUBLE_EQ(estimate_avg_clustering(empty), 0.0);
}

TEST(AvgClustering, DisjointCliquesGiveOne) {
  GraphBuilder b;
  for (int c = 0; c < 20; ++c)
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) b.add_edge(std::to_string(c * 8 + i), std::to_string(c * 8 + j));
  auto g = b.build();
  auto s = sample_random_node(g, 0.2, 5);
  ProbeLedger ledger(40);
  auto e = estimate_probe_based(g, s.graph, ledger, 20, 6);
  EXPECT_EQ(e.c_hat, 1.0);
}

TEST(AvgClustering, TriangleFreeGraphsStayLow) {
  auto g = gen::random_bipartite(300, 300, 0.03, 7);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto s = sample_random_node(g, 0.1, seed);
    ProbeLedger ledger(60);
    auto e = estimate_probe_based(g, s.graph, ledger, 30, seed);
    EXPECT_LE(e.c_hat, 0.05);
    EXPECT_GE(e.c_hat, 0.0);
  }
}

TEST(AvgClustering, AlwaysInUnitInterval) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    auto g = oracle::random_graph(40, 0.15, rng);
    auto obs = oracle::random_observed(g, rng);
    ProbeLedger ledger(10);
    if (candidates(obs).empty()) continue;
    auto e = estimate_probe_based(g, obs, ledger, 5, rng());
    EXPECT_GE(e.c_hat, 0.0);
    EXPECT_LE(e.c_hat, 1.0);
    EXPECT_GE(e.m_hat, 1.0);
  }
}

TEST(ClosedForm, DegreeEstimators) {
  EXPECT_DOUBLE_EQ(unbiased_degree_node_sampling(5, 0.1), 50.0);
  EXPECT_DOUBLE_EQ(unbiased_degree_node_sampling(7, 1.0), 7.0);
  EXPECT_THROW(unbiased_degree_node_sampling(5, 0.0), EstimationError);
  EXPECT_DOUBLE_EQ(unbiased_degree_edge_sampling(3, 0.1), 30.0);
  EXPECT_DOUBLE_EQ(unbiased_degree_edge_sampling(3, 1.0), 3.0);
  EXPECT_THROW(unbiased_degree_edge_sampling(3, 0.0), EstimationError);
}

TEST(ClosedForm, SurvivalProbabilities) {
  EXPECT_EQ(triangle_survival_prob(1.0), 1.0);
  EXPECT_EQ(wedge_survival_prob(1.0), 1.0);
  EXPECT_EQ(triangle_survival_prob(0.0), 0.0);
  EXPECT_EQ(wedge_survival_prob(0.0), 0.0);
  EXPECT_EQ(triangle_survival_prob(0.5), 0.5);
  EXPECT_EQ(wedge_survival_prob(0.5), 0.625);
  auto s = survival_probs(0.5);
  EXPECT_DOUBLE_EQ(s.p_closed, 0.8);
  for (int i = 0; i <= 1000; ++i) {
    const double f = i / 1000.0;
    EXPECT_LE(triangle_survival_prob(f), wedge_survival_prob(f) + 1e-15) << f;
    EXPECT_LE(wedge_survival_prob(f), 1.0 + 1e-15);
  }
}

TEST(ClosedForm, ClusteringEstimators) {
  EXPECT_DOUBLE_EQ(unbiased_clustering_node_sampling(0.3, 1.0).value, 0.3);
  auto c = unbiased_clustering_node_sampling(0.4, 0.5);
  EXPECT_DOUBLE_EQ(c.value, 0.5);
  EXPECT_FALSE(c.clamped);
  auto big = unbiased_clustering_node_sampling(0.9, 0.5);
  EXPECT_EQ(big.value, 1.0);
  EXPECT_TRUE(big.clamped);
  EXPECT_THROW(unbiased_clustering_node_sampling(0.4, 0.0), EstimationError);

  EXPECT_DOUBLE_EQ(unbiased_clustering_edge_sampling(0.3, 1.0).value, 0.3);
  EXPECT_DOUBLE_EQ(unbiased_clustering_edge_sampling(0.05, 0.1).value, 0.5);
  EXPECT_TRUE(unbiased_clustering_edge_sampling(0.2, 0.1).clamped);
  EXPECT_THROW(unbiased_clustering_edge_sampling(0.05, 0.0), EstimationError);
}

TEST(ClosedForm, KnownSampleEstimateSets) {
  auto g = gen::clustered(300, 10, 30, 0.4, 2.0, 9);
  auto s = sample_random_node(g, 0.3, 1);
  auto e = estimate_known_node_sample(s.graph, *s.fractions.f_n);
  EXPECT_EQ(e.method, EstimateMethod::KnownNodeSample);
  EXPECT_DOUBLE_EQ(e.m_hat, 1.0 / *s.fractions.f_n);
  EXPECT_EQ(e.probes_used, 0u);
  auto se = sample_random_edge(g, 0.3, 1);
  auto ee = estimate_known_edge_sample(se.graph, se.fractions.f_e);
  EXPECT_EQ(ee.method, EstimateMethod::KnownEdgeSample);
  EXPECT_DOUBLE_EQ(ee.c_hat, std::min(1.0, global_clustering(se.graph) / se.fractions.f_e));
}

// ---------------------------------------------------------------------------
// Monte-Carlo checks at reduced scale; the acceptance binary runs the full ones.

TEST(MonteCarlo, NodeSamplingSurvivalFrequencies) {
  auto g = gen::clustered(40, 8, 12, 0.6, 2.0, 10);
  const auto truth = count_triangles_wedges(g);
  for (double f : {0.2, 0.5, 0.8}) {
    double t = 0, w = 0;
    const int n = 3000;
    for (int i = 0; i < n; ++i) {
      auto s = sample_bernoulli_node(g, f, derive_seed(10, "mc", i));
      auto tw = count_triangles_wedges(s.graph);
      t += static_cast<double>(tw.triangles);
      w += static_cast<double>(tw.wedges);
    }
    EXPECT_NEAR(t / n / static_cast<double>(truth.triangles), triangle_survival_prob(f), 0.03) << f;
    EXPECT_NEAR(w / n / static_cast<double>(truth.wedges), wedge_survival_prob(f), 0.03) << f;
  }
}

TEST(MonteCarlo, EdgeSamplingDegreeAndClustering) {
  auto g = gen::clustered(150, 10, 25, 0.5, 2.0, 11);
  const double c_true = global_clustering(g);
  std::vector<double> deg_sum(g.num_nodes(), 0.0);
  double c_sum = 0.0;
  const int n = 1500;
  for (int i = 0; i < n; ++i) {
    auto s = sample_random_edge(g, 0.5, derive_seed(11, "mc", i));
    for (NodeId u : s.graph.nodes()) deg_sum[u] += unbiased_degree_edge_sampling(s.graph.degree(u), s.fractions.f_e);
    c_sum += unbiased_clustering_edge_sampling(global_clustering(s.graph), s.fractions.f_e).value;
  }
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    if (g.degree(u) >= 10) { EXPECT_NEAR(deg_sum[u] / n, g.degree(u), 0.05 * g.degree(u)) << g.label(u); }
  EXPECT_NEAR(c_sum / n, c_true, 0.05 * c_true);
}
