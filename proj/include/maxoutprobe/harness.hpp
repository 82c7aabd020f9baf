#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "maxoutprobe/error.hpp"
#include "maxoutprobe/estimators.hpp"
#include "maxoutprobe/graph.hpp"
#include "maxoutprobe/random.hpp"
#include "maxoutprobe/sampling.hpp"
#include "maxoutprobe/strategies.hpp"
#include "maxoutprobe/util.hpp"

namespace mop {

struct TrialConfig {
  SamplerKind sampler = SamplerKind::RandNode;
  double edge_fraction = 0.10;
  double jump_prob = 0.15;
  StrategyConfig strategy;
  // Budget as a fraction of |V(G)|, floored; budget_nodes overrides it.
  double budget_fraction = 0.05;
  std::optional<std::size_t> budget_nodes;
  std::size_t n_repeats = 20;
  std::uint64_t seed = 0;
  // Use the closed-form estimators when the sampler is RandNode or RandEdge.
  bool use_known_sample = false;
};

struct TrialResult {
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  std::size_t edges_after = 0;
  std::size_t probes_spent = 0;
  std::size_t budget = 0;
  std::optional<EstimateSet> estimate;

  friend bool operator==(const TrialResult& a, const TrialResult& b) {
    auto key = [](const TrialResult& r) {
      return std::make_tuple(r.nodes_before, r.nodes_after, r.edges_after, r.probes_spent, r.budget,
                             r.estimate.has_value(), r.estimate ? r.estimate->m_hat : 0.0,
                             r.estimate ? r.estimate->c_hat : 0.0);
    };
    return key(a) == key(b);
  }
};

inline std::size_t resolve_budget(const CompleteGraph& g, const TrialConfig& cfg) {
  std::size_t b = 0;
  if (cfg.budget_nodes) {
    b = *cfg.budget_nodes;
  } else {
    if (!(cfg.budget_fraction > 0.0 && cfg.budget_fraction <= 1.0))
      throw ConfigError("budget fraction must lie in (0, 1]");
    b = static_cast<std::size_t>(std::floor(cfg.budget_fraction * static_cast<double>(g.num_nodes()) + 1e-9));
  }
  if (b < 1) throw ConfigError("probe budget rounds down to zero nodes");
  return b;
}

// Fills in known-sample information for MaxOutProbe from the sample itself.
inline StrategyConfig strategy_for_sample(const TrialConfig& cfg, const Sample& s) {
  StrategyConfig sc = cfg.strategy;
  if (!cfg.use_known_sample || sc.kind != StrategyKind::MaxOutProbe) return sc;
  if (s.graph.origin() == SamplerKind::RandNode || s.graph.origin() == SamplerKind::BernoulliNode) {
    sc.known = KnownSample::Node;
    sc.known_fraction = s.fractions.f_n.value_or(0.0);
  } else if (s.graph.origin() == SamplerKind::RandEdge) {
    sc.known = KnownSample::Edge;
    sc.known_fraction = s.fractions.f_e;
  }
  return sc;
}

// Runs one strategy on a copy of an existing sample.
inline TrialResult run_on_sample(const CompleteGraph& g, const Sample& sample, const StrategyConfig& strategy,
                                 std::size_t b, std::uint64_t strategy_seed) {
  ObservedGraph obs = sample.graph;
  TrialResult r;
  r.nodes_before = obs.num_nodes();
  r.budget = b;
  auto outcome = run_strategy(g, obs, strategy, b, strategy_seed);
  r.nodes_after = obs.num_nodes();
  r.edges_after = obs.num_edges();
  r.probes_spent = outcome.ledger.spent();
  r.estimate = outcome.estimate;
  return r;
}

// sample -> estimation probes (if any) -> plan -> probes -> count.
inline TrialResult run_trial(const CompleteGraph& g, const TrialConfig& cfg, std::uint64_t sampler_seed,
                             std::uint64_t strategy_seed) {
  const std::size_t b = resolve_budget(g, cfg);
  auto sample = draw_sample(g, cfg.sampler, cfg.edge_fraction, cfg.jump_prob, sampler_seed);
  return run_on_sample(g, sample, strategy_for_sample(cfg, sample), b, strategy_seed);
}

inline double percent_improvement(double strategy_nodes, double random_nodes) {
  if (!(random_nodes > 0.0)) throw Error("random baseline observed no nodes");
  return 100.0 * (strategy_nodes - random_nodes) / random_nodes;
}

// ---------------------------------------------------------------------------
// CCDF / AUC

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

// Complementary CDF y(x) = |{v >= x}| / n as a step curve. Each jump is a
// pair of points sharing one x, so the trapezoid rule over the points is the
// exact area under the step function. The first point at each distinct
// sample value x carries y(x).
struct AggregateCurve {
  std::vector<CurvePoint> points;
  double auc = 0.0;
};

struct CurveRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Value of the curve at x: the first point at or after x (left-continuous).
inline double curve_at(const AggregateCurve& c, double x) {
  if (c.points.empty()) return 0.0;
  for (const auto& p : c.points)
    if (p.x >= x) return p.y;
  return c.points.back().y;
}

// Trapezoid rule over [lo, hi], clipping each segment with linear
// interpolation. Outside its points the curve holds its first y on the left
// and its last y on the right.
inline double auc(const AggregateCurve& c, CurveRange range) {
  const auto& pts = c.points;
  if (pts.size() < 2 || !(range.hi > range.lo)) return 0.0;
  double area = 0.0;
  if (range.lo < pts.front().x)
    area += (std::min(range.hi, pts.front().x) - range.lo) * pts.front().y;
  if (range.hi > pts.back().x)
    area += (range.hi - std::max(range.lo, pts.back().x)) * pts.back().y;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto& p0 = pts[i - 1];
    const auto& p1 = pts[i];
    if (!(p1.x > p0.x)) continue;
    const double a = std::max(p0.x, range.lo);
    const double b = std::min(p1.x, range.hi);
    if (!(b > a)) continue;
    auto lerp = [&](double x) { return p0.y + (p1.y - p0.y) * (x - p0.x) / (p1.x - p0.x); };
    area += (b - a) * (lerp(a) + lerp(b)) / 2.0;
  }
  return area;
}

inline double auc(const AggregateCurve& c) {
  if (c.points.size() < 2) return 0.0;
  return auc(c, {c.points.front().x, c.points.back().x});
}

inline AggregateCurve ccdf(std::span<const double> values, std::optional<CurveRange> range = std::nullopt) {
  if (values.empty()) throw Error("ccdf of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());

  std::vector<CurvePoint> steps;  // (distinct x, fraction >= x)
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    steps.push_back({v[i], static_cast<double>(v.size() - i) / n});
    i = j;
  }

  AggregateCurve c;
  if (range && range->lo < steps.front().x) c.points.push_back({range->lo, 1.0});
  for (std::size_t k = 0; k < steps.size(); ++k) {
    c.points.push_back(steps[k]);
    const double next = k + 1 < steps.size() ? steps[k + 1].y : 0.0;
    c.points.push_back({steps[k].x, next});
  }
  if (range && range->hi > steps.back().x) c.points.push_back({range->hi, 0.0});
  c.auc = range ? auc(c, *range) : auc(c);
  return c;
}

// Smallest interval covering every curve's sample values.
inline CurveRange common_range(std::span<const std::vector<double>> samples) {
  CurveRange r{0.0, 0.0};
  bool first = true;
  for (const auto& s : samples)
    for (double v : s) {
      if (first) {
        r = {v, v};
        first = false;
      }
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepGrid {
  std::vector<SamplerKind> samplers{SamplerKind::RandNode, SamplerKind::RandEdge, SamplerKind::RandomWalk,
                                    SamplerKind::RandomWalkJump};
  std::vector<StrategyConfig> strategies;
  std::vector<double> budget_fractions{0.01, 0.02, 0.03, 0.04, 0.05};
  std::size_t repeats = 20;
  std::uint64_t master_seed = 0;
  double edge_fraction = 0.10;
  double jump_prob = 0.15;
  bool use_known_sample = false;
  std::size_t threads = 1;
};

struct SweepRow {
  SamplerKind sampler = SamplerKind::None;
  StrategyKind strategy = StrategyKind::Random;
  bool baseline = false;
  double edge_fraction = 0.0;
  double budget_fraction = 0.0;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  TrialResult result;
  std::optional<double> improvement;
  std::string error;

  bool failed() const { return !error.empty(); }
};

inline std::uint64_t sampler_seed_for(std::uint64_t master, SamplerKind s, std::size_t repeat) {
  return derive_seed(derive_seed(master, "sampler"), sampler_name(s), repeat);
}

inline std::uint64_t strategy_seed_for(std::uint64_t master, SamplerKind s, StrategyKind k, double budget,
                                       std::size_t repeat) {
  auto base = derive_seed(derive_seed(master, "strategy"), strategy_name(k));
  base = derive_seed(base, sampler_name(s), repeat);
  return derive_seed(base, format_double(budget));
}

inline std::size_t default_threads() {
  if (const char* env = std::getenv("MAXOUTPROBE_THREADS")) {
    try {
      auto n = std::stoul(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return 1;
}

// Every (sampler, budget, repeat) cell draws one sample, runs a paired Random
// baseline on it and then every configured strategy on the same sample. Rows
// come out in grid order however many threads run the cells. A failing cell
// yields failed rows instead of aborting the sweep.
inline std::vector<SweepRow> sweep(const CompleteGraph& g, const SweepGrid& grid) {
  if (grid.samplers.empty() || grid.budget_fractions.empty() || grid.repeats == 0)
    throw ConfigError("sweep grid is empty");
  std::vector<StrategyConfig> strategies;
  for (const auto& s : grid.strategies)
    if (s.kind != StrategyKind::Random) strategies.push_back(s);
  if (strategies.empty() && grid.strategies.empty()) throw ConfigError("sweep needs at least one strategy");

  struct Cell {
    SamplerKind sampler;
    double budget;
    std::size_t repeat;
  };
  std::vector<Cell> cells;
  for (auto s : grid.samplers)
    for (double b : grid.budget_fractions)
      for (std::size_t r = 0; r < grid.repeats; ++r) cells.push_back({s, b, r});

  std::vector<std::vector<SweepRow>> out(cells.size());

  auto run_cell = [&](std::size_t ci) {
    const Cell& cell = cells[ci];
    const auto sseed = sampler_seed_for(grid.master_seed, cell.sampler, cell.repeat);
    auto row_for = [&](StrategyKind k, bool baseline) {
      SweepRow row;
      row.sampler = cell.sampler;
      row.strategy = k;
      row.baseline = baseline;
      row.edge_fraction = grid.edge_fraction;
      row.budget_fraction = cell.budget;
      row.repeat = cell.repeat;
      row.seed = sseed;
      return row;
    };
    auto& rows = out[ci];

    TrialConfig tc;
    tc.sampler = cell.sampler;
    tc.edge_fraction = grid.edge_fraction;
    tc.jump_prob = grid.jump_prob;
    tc.budget_fraction = cell.budget;
    tc.use_known_sample = grid.use_known_sample;

    std::optional<Sample> sample;
    std::size_t b = 0;
    std::string cell_error;
    try {
      b = resolve_budget(g, tc);
      sample = draw_sample(g, cell.sampler, grid.edge_fraction, grid.jump_prob, sseed);
    } catch (const std::exception& e) {
      cell_error = e.what();
    }

    SweepRow base = row_for(StrategyKind::Random, true);
    if (cell_error.empty()) {
      try {
        StrategyConfig rc;
        rc.kind = StrategyKind::Random;
        base.result = run_on_sample(
            g, *sample, rc, b, strategy_seed_for(grid.master_seed, cell.sampler, rc.kind, cell.budget, cell.repeat));
        base.improvement = 0.0;
      } catch (const std::exception& e) {
        base.error = e.what();
      }
    } else {
      base.error = cell_error;
    }
    rows.push_back(base);

    for (const auto& sc : strategies) {
      SweepRow row = row_for(sc.kind, false);
      if (!cell_error.empty()) {
        row.error = cell_error;
      } else {
        try {
          tc.strategy = sc;
          row.result = run_on_sample(
              g, *sample, strategy_for_sample(tc, *sample), b,
              strategy_seed_for(grid.master_seed, cell.sampler, sc.kind, cell.budget, cell.repeat));
          if (!base.failed())
            row.improvement = percent_improvement(static_cast<double>(row.result.nodes_after),
                                                  static_cast<double>(base.result.nodes_after));
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      }
      rows.push_back(row);
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(grid.threads, cells.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<SweepRow> rows;
  for (auto& cell_rows : out)
    for (auto& r : cell_rows) rows.push_back(std::move(r));
  return rows;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

inline void write_results_header(std::ostream& out, bool with_graph) {
  out << "sampler,strategy,edge_fraction,budget_fraction,repeat,seed,nodes_before,nodes_after,"
         "edges_after,probes_spent,c_hat,m_hat,improvement_vs_random";
  if (with_graph) out << ",graph";
  out << ",error\n";
}

// Failed rows leave the numeric columns empty and carry the message in error.
inline void write_result_row(std::ostream& out, const SweepRow& r, const std::string* graph) {
  out << sampler_name(r.sampler) << ',' << strategy_name(r.strategy) << ',' << format_double(r.edge_fraction)
      << ',' << format_double(r.budget_fraction) << ',' << r.repeat << ',' << r.seed << ',';
  if (r.failed()) {
    out << ",,,,,,";
  } else {
    const auto& t = r.result;
    out << t.nodes_before << ',' << t.nodes_after << ',' << t.edges_after << ',' << t.probes_spent << ',';
    if (t.estimate) out << format_double(t.estimate->c_hat);
    out << ',';
    if (t.estimate) out << format_double(t.estimate->m_hat);
    out << ',';
    if (r.improvement) out << format_double(*r.improvement);
  }
  if (graph) out << ',' << csv_field(*graph);
  out << ',' << csv_field(r.error) << '\n';
}

inline void write_results_csv(std::ostream& out, std::span<const SweepRow> rows) {
  write_results_header(out, false);
  for (const auto& r : rows) write_result_row(out, r, nullptr);
}

struct NamedCurve {
  SamplerKind sampler = SamplerKind::None;
  double budget_fraction = 0.0;
  StrategyKind strategy = StrategyKind::Random;
  AggregateCurve curve;
  CurveRange range;
};

// One CCDF of percent improvement over Random per (sampler, budget,
// strategy), all curves of a (sampler, budget) group sharing one x-range.
inline std::vector<NamedCurve> build_curves(std::span<const SweepRow> rows) {
  using Key = std::tuple<int, double>;
  std::map<Key, std::map<int, std::vector<double>>> groups;
  std::map<Key, SamplerKind> sampler_of;
  for (const auto& r : rows) {
    if (r.baseline || r.failed() || !r.improvement) continue;
    Key k{static_cast<int>(r.sampler), r.budget_fraction};
    groups[k][static_cast<int>(r.strategy)].push_back(*r.improvement);
    sampler_of[k] = r.sampler;
  }
  std::vector<NamedCurve> out;
  for (auto& [key, by_strategy] : groups) {
    std::vector<std::vector<double>> all;
    for (auto& [s, vals] : by_strategy) all.push_back(vals);
    const auto range = common_range(all);
    for (auto& [s, vals] : by_strategy) {
      NamedCurve nc;
      nc.sampler = sampler_of[key];
      nc.budget_fraction = std::get<1>(key);
      nc.strategy = static_cast<StrategyKind>(s);
      nc.range = range;
      nc.curve = ccdf(vals, range);
      out.push_back(std::move(nc));
    }
  }
  return out;
}

inline void write_curves_csv(std::ostream& out, std::span<const NamedCurve> curves) {
  out << "sampler,budget_fraction,strategy,x,y\n";
  for (const auto& c : curves)
    for (const auto& p : c.curve.points)
      out << sampler_name(c.sampler) << ',' << format_double(c.budget_fraction) << ','
          << strategy_name(c.strategy) << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
  for (const auto& c : curves)
    out << "# auc," << sampler_name(c.sampler) << ',' << format_double(c.budget_fraction) << ','
        << strategy_name(c.strategy) << ',' << format_double(c.curve.auc) << ",range,"
        << format_double(c.range.lo) << ',' << format_double(c.range.hi) << '\n';
}

}  // namespace mop
