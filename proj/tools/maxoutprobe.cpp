#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxoutprobe/maxoutprobe.hpp"
#include "maxoutprobe/report.hpp"

#ifndef MAXOUTPROBE_VERSION
#define MAXOUTPROBE_VERSION "0.0.0"
#endif

namespace {

using json = nlohmann::ordered_json;
using namespace mop;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

// Bad arguments discovered after parsing; exits with the usage code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

CompleteGraph read_graph(const std::string& path, LoadReport* report = nullptr) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read graph '" + path + "'");
  try {
    return load_edge_list(in, report);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

ObservedGraph read_obs(const std::string& path, const CompleteGraph& g) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read observed graph '" + path + "'");
  try {
    return read_observed(in, g);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

json file_list(const std::vector<std::string>& paths) {
  json arr = json::array();
  for (const auto& p : paths) arr.push_back({{"path", p}, {"sha256", sha256_file(p)}});
  return arr;
}

void write_manifest(const std::string& path, const std::string& command, json params, std::uint64_t seed,
                    const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "maxoutprobe";
  m["version"] = MAXOUTPROBE_VERSION;
  m["command"] = command;
  m["parameters"] = std::move(params);
  m["seed"] = seed;
  m["inputs"] = file_list(inputs);
  m["outputs"] = file_list(outputs);
  auto out = open_out(path);
  out << m.dump(2) << '\n';
}

void write_json(const std::string& path, const json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

SamplerKind sampler_arg(const std::string& name) {
  auto k = parse_sampler(name);
  if (!k || *k == SamplerKind::None || *k == SamplerKind::BernoulliNode)
    throw UsageError("unknown sampler '" + name + "' (expected randnode, randedge, rw or rwj)");
  return *k;
}

StrategyKind strategy_arg(const std::string& name) {
  auto k = parse_strategy(name);
  if (!k) throw UsageError("unknown strategy '" + name + "'");
  return *k;
}

struct BudgetArgs {
  std::optional<long long> nodes;
  std::optional<double> fraction;

  // Fractions floor to whole nodes with a minimum of one.
  std::size_t resolve(const CompleteGraph& g) const {
    if (nodes) {
      if (*nodes < 1) throw UsageError("--budget must be at least 1");
      return static_cast<std::size_t>(*nodes);
    }
    if (fraction) {
      if (!(*fraction > 0.0 && *fraction <= 1.0)) throw UsageError("--budget-frac must lie in (0, 1]");
      auto b = static_cast<std::size_t>(std::floor(*fraction * static_cast<double>(g.num_nodes()) + 1e-9));
      return std::max<std::size_t>(1, b);
    }
    throw UsageError("one of --budget or --budget-frac is required");
  }

  json to_json() const {
    json j;
    j["budget"] = nodes ? json(*nodes) : json(nullptr);
    j["budget_frac"] = fraction ? json(*fraction) : json(nullptr);
    return j;
  }
};

void add_budget_options(CLI::App* cmd, BudgetArgs& b) {
  auto* n = cmd->add_option("--budget", b.nodes, "Probe budget in nodes");
  auto* f = cmd->add_option("--budget-frac", b.fraction, "Probe budget as a fraction of the graph's nodes");
  n->excludes(f);
}

struct KnownArgs {
  std::string sampler;
  std::optional<double> f_n;
  std::optional<double> f_e;

  // Missing fractions are read off the observed graph: explored nodes over
  // |V| for node samples, observed edges over |E| for edge samples.
  void apply(StrategyConfig& cfg, const CompleteGraph& g, const ObservedGraph& obs) const {
    if (sampler.empty()) {
      if (f_n || f_e) throw UsageError("--f-n/--f-e need --known-sampler");
      return;
    }
    if (sampler == "randnode") {
      cfg.known = KnownSample::Node;
      cfg.known_fraction =
          f_n.value_or(static_cast<double>(obs.num_explored()) / static_cast<double>(g.num_nodes()));
    } else if (sampler == "randedge") {
      cfg.known = KnownSample::Edge;
      cfg.known_fraction = f_e.value_or(static_cast<double>(obs.num_edges()) / static_cast<double>(g.num_edges()));
    } else {
      throw UsageError("--known-sampler must be randnode or randedge");
    }
    if (!(cfg.known_fraction > 0.0 && cfg.known_fraction <= 1.0))
      throw UsageError("known sample fraction must lie in (0, 1]");
  }

  json to_json() const {
    json j;
    j["known_sampler"] = sampler.empty() ? json(nullptr) : json(sampler);
    j["f_n"] = f_n ? json(*f_n) : json(nullptr);
    j["f_e"] = f_e ? json(*f_e) : json(nullptr);
    return j;
  }
};

void add_known_options(CLI::App* cmd, KnownArgs& k) {
  cmd->add_option("--known-sampler", k.sampler, "Declare the sample type (randnode|randedge) to use closed-form estimators");
  cmd->add_option("--f-n", k.f_n, "Selected node fraction of a random node sample");
  cmd->add_option("--f-e", k.f_e, "Observed edge fraction of a random edge sample");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = parse_double(item);
    if (!v) throw UsageError("bad number '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string default_path(const std::string& given, const std::string& base, const std::string& suffix) {
  return given.empty() ? base + suffix : given;
}

// ---------------------------------------------------------------------------

struct SampleCmd {
  std::string graph, sampler, out, manifest;
  double fraction = 0.10;
  double jump = 0.15;
  std::uint64_t seed = 0;

  void run() const {
    const auto kind = sampler_arg(sampler);
    auto g = read_graph(graph);
    auto s = draw_sample(g, kind, fraction, jump, seed);
    {
      auto o = open_out(out);
      write_observed(o, s.graph);
    }
    json p;
    p["graph"] = graph;
    p["sampler"] = sampler;
    p["fraction"] = fraction;
    p["jump"] = kind == SamplerKind::RandomWalkJump ? json(jump) : json(nullptr);
    p["achieved"] = fractions_report(s.fractions);
    p["nodes"] = s.graph.num_nodes();
    p["edges"] = s.graph.num_edges();
    write_manifest(default_path(manifest, out, ".manifest.json"), "sample", p, seed, {graph}, {out});
  }
};

struct ProbeCmd {
  std::string graph, observed, strategy, out, log, report, manifest;
  BudgetArgs budget;
  KnownArgs known;
  std::size_t estimation_probes = 100;
  bool no_charge = false;
  bool no_cap = false;
  std::uint64_t seed = 0;

  void run() const {
    StrategyConfig cfg;
    cfg.kind = strategy_arg(strategy);
    cfg.estimation_probes = estimation_probes;
    cfg.charge_estimation = !no_charge;
    cfg.cap_estimation = !no_cap;
    if (estimation_probes == 0) throw UsageError("--estimation-probes must be at least 1");
    auto g = read_graph(graph);
    auto obs = read_obs(observed, g);
    const auto b = budget.resolve(g);
    known.apply(cfg, g, obs);

    const auto nodes_before = obs.num_nodes();
    auto outcome = run_strategy(g, obs, cfg, b, seed);

    const auto log_path = default_path(log, out, ".probes.csv");
    const auto report_path = default_path(report, out, ".report.json");
    {
      auto o = open_out(out);
      write_observed(o, obs);
      auto l = open_out(log_path);
      write_probe_log(l, outcome.ledger, *g.labels());
    }
    json r;
    r["strategy"] = strategy;
    r["budget"] = b;
    r["nodes_before"] = nodes_before;
    r["nodes_after"] = obs.num_nodes();
    r["edges_after"] = obs.num_edges();
    r["probes_spent"] = outcome.ledger.spent();
    r["estimation_probes"] = outcome.ledger.spent_in(Phase::Estimation);
    r["estimate"] = outcome.estimate ? estimate_report(*outcome.estimate) : json(nullptr);
    write_json(report_path, r);

    json p;
    p["graph"] = graph;
    p["observed"] = observed;
    p["strategy"] = strategy;
    p.update(budget.to_json());
    p["resolved_budget"] = b;
    p["estimation_probes"] = estimation_probes;
    p["charge_estimation"] = !no_charge;
    p["cap_estimation"] = !no_cap;
    p.update(known.to_json());
    write_manifest(default_path(manifest, out, ".manifest.json"), "probe", p, seed, {graph, observed},
                   {out, log_path, report_path});
  }
};

struct EstimateCmd {
  std::string graph, observed, out = "-", manifest;
  BudgetArgs budget;
  KnownArgs known;
  std::size_t estimation_probes = 100;
  bool no_cap = false;
  std::uint64_t seed = 0;

  void run() const {
    auto g = read_graph(graph);
    auto obs = read_obs(observed, g);
    StrategyConfig cfg;
    known.apply(cfg, g, obs);
    json r;
    if (cfg.known == KnownSample::Node) {
      r = estimate_report(estimate_known_node_sample(obs, cfg.known_fraction));
    } else if (cfg.known == KnownSample::Edge) {
      r = estimate_report(estimate_known_edge_sample(obs, cfg.known_fraction));
    } else {
      if (estimation_probes == 0) throw UsageError("--estimation-probes must be at least 1");
      const auto b = budget.resolve(g);
      cfg.estimation_probes = estimation_probes;
      cfg.cap_estimation = !no_cap;
      ProbeLedger ledger(b);
      const auto n = std::min(estimation_probe_count(cfg, b), ledger.remaining());
      r = estimate_report(estimate_probe_based(g, obs, ledger, n, derive_seed(seed, "estimation")));
    }
    r["observed_clustering"] = global_clustering(obs);
    write_json(out, r);
    if (out != "-") {
      json p;
      p["graph"] = graph;
      p["observed"] = observed;
      p.update(budget.to_json());
      p["estimation_probes"] = estimation_probes;
      p["cap_estimation"] = !no_cap;
      p.update(known.to_json());
      write_manifest(default_path(manifest, out, ".manifest.json"), "estimate", p, seed, {graph, observed}, {out});
    }
  }
};

struct SweepCmd {
  std::vector<std::string> graphs;
  std::string samplers = "randnode,randedge,rw,rwj";
  std::string strategies = "maxoutprobe,highdeg,lowdeg,highdisp,lowdisp,crosscomm,highcc,lowcc,random";
  std::string budgets = "0.01,0.02,0.03,0.04,0.05";
  std::size_t repeats = 20;
  double fraction = 0.10;
  double jump = 0.15;
  bool known_sample = false;
  std::size_t estimation_probes = 100;
  std::size_t threads = default_threads();
  std::uint64_t seed = 0;
  std::string out, curves, manifest;

  void run() const {
    SweepGrid grid;
    grid.samplers.clear();
    for (const auto& s : split_names(samplers)) grid.samplers.push_back(sampler_arg(s));
    for (const auto& s : split_names(strategies)) {
      StrategyConfig sc;
      sc.kind = strategy_arg(s);
      sc.estimation_probes = estimation_probes;
      grid.strategies.push_back(sc);
    }
    if (grid.strategies.empty()) throw UsageError("--strategies is empty");
    if (grid.samplers.empty()) throw UsageError("--samplers is empty");
    grid.budget_fractions = parse_list(budgets);
    if (grid.budget_fractions.empty()) throw UsageError("--budgets is empty");
    for (double b : grid.budget_fractions)
      if (!(b > 0.0 && b <= 1.0)) throw UsageError("budget fractions must lie in (0, 1]");
    if (repeats == 0) throw UsageError("--repeats must be at least 1");
    if (estimation_probes == 0) throw UsageError("--estimation-probes must be at least 1");
    grid.repeats = repeats;
    grid.master_seed = seed;
    grid.edge_fraction = fraction;
    grid.jump_prob = jump;
    grid.use_known_sample = known_sample;
    grid.threads = std::max<std::size_t>(1, threads);

    const auto curves_path = default_path(curves, out, ".curves.csv");
    std::vector<SweepRow> all;
    {
      auto o = open_out(out);
      write_results_header(o, true);
      for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        auto g = read_graph(graphs[gi]);
        // distinct graphs draw from distinct seed streams
        grid.master_seed = graphs.size() == 1 ? seed : derive_seed(seed, "graph", gi);
        auto rows = sweep(g, grid);
        for (const auto& r : rows) write_result_row(o, r, &graphs[gi]);
        all.insert(all.end(), rows.begin(), rows.end());
      }
      auto c = open_out(curves_path);
      write_curves_csv(c, build_curves(all));
    }

    std::size_t failed = 0;
    for (const auto& r : all) failed += r.failed();
    if (failed) std::cerr << "maxoutprobe: " << failed << " of " << all.size() << " trials failed\n";

    json p;
    p["graphs"] = graphs;
    p["samplers"] = split_names(samplers);
    p["strategies"] = split_names(strategies);
    p["budgets"] = grid.budget_fractions;
    p["repeats"] = repeats;
    p["fraction"] = fraction;
    p["jump"] = jump;
    p["known_sample"] = known_sample;
    p["estimation_probes"] = estimation_probes;
    p["rows"] = all.size();
    p["failed_rows"] = failed;
    write_manifest(default_path(manifest, out, ".manifest.json"), "sweep", p, seed, graphs, {out, curves_path});
  }
};

struct StatsCmd {
  std::string graph, observed, out = "-";

  void run() const {
    LoadReport lr;
    auto g = read_graph(graph, &lr);
    auto tw = count_triangles_wedges(g);
    json j;
    j["graph"] = graph;
    j["nodes"] = g.num_nodes();
    j["edges"] = g.num_edges();
    j["max_degree"] = g.max_degree();
    j["triangles"] = tw.triangles;
    j["wedges"] = tw.wedges;
    j["global_clustering"] = global_clustering(g);
    j["load"] = {{"lines", lr.lines},
                 {"edges_read", lr.edges_read},
                 {"self_loops", lr.self_loops},
                 {"duplicates", lr.duplicates}};
    if (!observed.empty()) {
      auto obs = read_obs(observed, g);
      auto otw = count_triangles_wedges(obs);
      j["observed"] = {{"path", observed},
                       {"origin", std::string(sampler_name(obs.origin()))},
                       {"nodes", obs.num_nodes()},
                       {"edges", obs.num_edges()},
                       {"explored", obs.num_explored()},
                       {"candidates", obs.num_nodes() - obs.num_explored()},
                       {"triangles", otw.triangles},
                       {"wedges", otw.wedges},
                       {"global_clustering", global_clustering(obs)},
                       {"node_fraction", static_cast<double>(obs.num_nodes()) / static_cast<double>(g.num_nodes())},
                       {"edge_fraction", static_cast<double>(obs.num_edges()) / static_cast<double>(g.num_edges())}};
    }
    write_json(out, j);
  }
};

struct GenerateCmd {
  std::string model = "dcsbm", out;
  std::size_t nodes = 5000, min_block = 20, max_block = 100;
  double p_in = 0.5, p_out = 0.01, in_degree = 14.0, out_degree = 3.0, alpha = 2.5, max_weight = 40.0;
  std::size_t left = 100, right = 100;
  std::uint64_t seed = 0;

  void run() const {
    CompleteGraph g;
    if (model == "dcsbm")
      g = gen::degree_corrected_clustered(nodes, min_block, max_block, in_degree, out_degree, alpha, max_weight, seed);
    else if (model == "clustered")
      g = gen::clustered(nodes, min_block, max_block, p_in, out_degree, seed);
    else if (model == "er")
      g = gen::erdos_renyi(nodes, p_out, seed);
    else if (model == "bipartite")
      g = gen::random_bipartite(left, right, p_out, seed);
    else
      throw UsageError("unknown model '" + model + "' (expected dcsbm, clustered, er or bipartite)");
    auto o = open_out(out);
    o << "# model " << model << " seed " << seed << '\n';
    for (auto [u, v] : g.edges()) o << g.label(u) << ' ' << g.label(v) << '\n';
  }
};

struct VerifyCmd {
  std::string manifest;

  int run() const {
    std::ifstream in(manifest);
    if (!in) throw Error("cannot read manifest '" + manifest + "'");
    json m;
    try {
      m = json::parse(in);
    } catch (const std::exception& e) {
      throw Error("manifest '" + manifest + "' is not valid JSON: " + e.what());
    }
    int bad = 0;
    for (const char* key : {"inputs", "outputs"}) {
      if (!m.contains(key)) throw Error("manifest has no '" + std::string(key) + "' list");
      for (const auto& f : m[key]) {
        const auto path = f.at("path").get<std::string>();
        std::string actual;
        try {
          actual = sha256_file(path);
        } catch (const Error&) {
          actual = "missing";
        }
        const bool ok = actual == f.at("sha256").get<std::string>();
        if (!ok) ++bad;
        std::cout << (ok ? "ok       " : "MISMATCH ") << path << '\n';
      }
    }
    return bad ? kExitRuntime : 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted probing of incomplete networks"};
  app.set_version_flag("--version", MAXOUTPROBE_VERSION);
  app.require_subcommand(1);

  SampleCmd sample;
  auto* cs = app.add_subcommand("sample", "Draw an incomplete observation of a graph");
  cs->add_option("--graph", sample.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  cs->add_option("--sampler", sample.sampler, "randnode | randedge | rw | rwj")->required();
  cs->add_option("--fraction", sample.fraction, "Target fraction of edges")->capture_default_str();
  cs->add_option("--jump", sample.jump, "Jump probability for rwj")->capture_default_str();
  cs->add_option("--seed", sample.seed, "Seed")->capture_default_str();
  cs->add_option("--out", sample.out, "Observed-graph output file")->required();
  cs->add_option("--manifest", sample.manifest, "Manifest path (default: <out>.manifest.json)");

  ProbeCmd probe_cmd;
  auto* cp = app.add_subcommand("probe", "Select and execute a probe plan");
  cp->add_option("--graph", probe_cmd.graph, "Edge-list file of the complete graph")->required()->check(CLI::ExistingFile);
  cp->add_option("--observed", probe_cmd.observed, "Observed-graph file")->required()->check(CLI::ExistingFile);
  cp->add_option("--strategy", probe_cmd.strategy, "Probing strategy")->required();
  add_budget_options(cp, probe_cmd.budget);
  add_known_options(cp, probe_cmd.known);
  cp->add_option("--estimation-probes", probe_cmd.estimation_probes, "Estimation probes requested")->capture_default_str();
  cp->add_flag("--no-charge-estimation", probe_cmd.no_charge, "Do not charge estimation probes to the budget");
  cp->add_flag("--no-cap-estimation", probe_cmd.no_cap, "Do not cap estimation probes at half the budget");
  cp->add_option("--seed", probe_cmd.seed, "Seed")->capture_default_str();
  cp->add_option("--out", probe_cmd.out, "Augmented observed-graph output file")->required();
  cp->add_option("--log", probe_cmd.log, "Probe log CSV (default: <out>.probes.csv)");
  cp->add_option("--report", probe_cmd.report, "Run report JSON (default: <out>.report.json)");
  cp->add_option("--manifest", probe_cmd.manifest, "Manifest path (default: <out>.manifest.json)");

  EstimateCmd est;
  auto* ce = app.add_subcommand("estimate", "Estimate degree scale and clustering for an observed graph");
  ce->add_option("--graph", est.graph, "Edge-list file of the complete graph")->required()->check(CLI::ExistingFile);
  ce->add_option("--observed", est.observed, "Observed-graph file")->required()->check(CLI::ExistingFile);
  add_budget_options(ce, est.budget);
  add_known_options(ce, est.known);
  ce->add_option("--estimation-probes", est.estimation_probes, "Estimation probes requested")->capture_default_str();
  ce->add_flag("--no-cap-estimation", est.no_cap, "Do not cap estimation probes at half the budget");
  ce->add_option("--seed", est.seed, "Seed")->capture_default_str();
  ce->add_option("--out", est.out, "Report path, '-' for stdout")->capture_default_str();
  ce->add_option("--manifest", est.manifest, "Manifest path (default: <out>.manifest.json)");

  SweepCmd sw;
  auto* cw = app.add_subcommand("sweep", "Run the sampler x strategy x budget x repeat experiment grid");
  cw->add_option("--graph", sw.graphs, "Edge-list file(s)")->required()->check(CLI::ExistingFile);
  cw->add_option("--samplers", sw.samplers, "Comma-separated samplers")->capture_default_str();
  cw->add_option("--strategies", sw.strategies, "Comma-separated strategies")->capture_default_str();
  cw->add_option("--budgets", sw.budgets, "Comma-separated budget fractions")->capture_default_str();
  cw->add_option("--repeats", sw.repeats, "Samples per sampler")->capture_default_str();
  cw->add_option("--fraction", sw.fraction, "Target fraction of edges")->capture_default_str();
  cw->add_option("--jump", sw.jump, "Jump probability for rwj")->capture_default_str();
  cw->add_flag("--known-sample", sw.known_sample, "Closed-form estimators for randnode/randedge samples");
  cw->add_option("--estimation-probes", sw.estimation_probes, "Estimation probes requested")->capture_default_str();
  cw->add_option("--threads", sw.threads, "Worker threads (default from MAXOUTPROBE_THREADS)")->capture_default_str();
  cw->add_option("--seed", sw.seed, "Master seed")->capture_default_str();
  cw->add_option("--out", sw.out, "Results CSV")->required();
  cw->add_option("--curves", sw.curves, "Curves CSV (default: <out>.curves.csv)");
  cw->add_option("--manifest", sw.manifest, "Manifest path (default: <out>.manifest.json)");

  StatsCmd st;
  auto* ct = app.add_subcommand("stats", "Print graph statistics as JSON");
  ct->add_option("--graph", st.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  ct->add_option("--observed", st.observed, "Observed-graph file")->check(CLI::ExistingFile);
  ct->add_option("--out", st.out, "Output path, '-' for stdout")->capture_default_str();

  GenerateCmd gc;
  auto* cg = app.add_subcommand("generate", "Write a synthetic graph as an edge list");
  cg->add_option("--model", gc.model, "dcsbm | clustered | er | bipartite")->capture_default_str();
  cg->add_option("--nodes", gc.nodes, "Node count")->capture_default_str();
  cg->add_option("--min-block", gc.min_block, "Smallest block")->capture_default_str();
  cg->add_option("--max-block", gc.max_block, "Largest block")->capture_default_str();
  cg->add_option("--p-in", gc.p_in, "Inside-block edge probability (clustered)")->capture_default_str();
  cg->add_option("--p", gc.p_out, "Edge probability (er, bipartite)")->capture_default_str();
  cg->add_option("--in-degree", gc.in_degree, "Expected inside-block degree per unit weight (dcsbm)")->capture_default_str();
  cg->add_option("--out-degree", gc.out_degree, "Expected cross-block degree (dcsbm, clustered)")->capture_default_str();
  cg->add_option("--alpha", gc.alpha, "Pareto exponent of node weights (dcsbm)")->capture_default_str();
  cg->add_option("--max-weight", gc.max_weight, "Weight cap (dcsbm)")->capture_default_str();
  cg->add_option("--left", gc.left, "Left side size (bipartite)")->capture_default_str();
  cg->add_option("--right", gc.right, "Right side size (bipartite)")->capture_default_str();
  cg->add_option("--seed", gc.seed, "Seed")->capture_default_str();
  cg->add_option("--out", gc.out, "Edge-list output file")->required();

  VerifyCmd vc;
  auto* cv = app.add_subcommand("verify", "Check a manifest's digests against the files on disk");
  cv->add_option("--manifest", vc.manifest, "Manifest file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (cs->parsed()) sample.run();
    if (cp->parsed()) probe_cmd.run();
    if (ce->parsed()) est.run();
    if (cw->parsed()) sw.run();
    if (ct->parsed()) st.run();
    if (cg->parsed()) gc.run();
    if (cv->parsed()) return vc.run();
  } catch (const UsageError& e) {
    std::cerr << "maxoutprobe: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "maxoutprobe: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "maxoutprobe: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
