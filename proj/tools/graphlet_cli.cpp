// graphlet: command-line front end.
//
// Reports go to stdout (JSON by default, TSV with --tsv); progress and
// errors go to stderr. Exit codes: 0 ok, 1 usage, 2 input, 3 resource
// limits, 4 verification mismatch.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <new>
#include <optional>
#include <string>

#include "graphlet/graphlet.hpp"
#include "graphlet/report.hpp"

using namespace graphlet;
using report::Json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kResource = 3, kMismatch = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string graph;
  std::string format = "auto";
  bool tsv = false;
  bool quiet = false;
  std::size_t workers = 1;
};

struct Sampling {
  std::optional<double> prob;
  std::optional<std::size_t> samples;
  std::string design = "uniform";
  bool replacement = false;
  std::uint64_t seed = 0;
  double ci = 0.95;
  std::size_t runs = 1;
};

std::size_t default_workers() {
  if (const char* env = std::getenv("GRAPHLET_WORKERS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1;
}

void add_common(CLI::App* cmd, Common& c, bool parallel) {
  cmd->add_option("graph", c.graph, "Edge list, Matrix-Market file or canonical dump (.gz accepted)")->required();
  cmd->add_option("--format", c.format, "Input format")
      ->check(CLI::IsMember({"auto", "edgelist", "mtx", "canonical"}))
      ->capture_default_str();
  cmd->add_flag("--tsv", c.tsv, "Tab-separated output");
  cmd->add_flag("--quiet", c.quiet, "No progress on stderr");
  if (parallel)
    cmd->add_option("--workers", c.workers, "Worker threads (default $GRAPHLET_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
}

void add_sampling(CLI::App* cmd, Sampling& s) {
  auto* prob = cmd->add_option("--prob", s.prob, "Edge sampling probability in (0, 1]");
  auto* samples = cmd->add_option("--samples", s.samples, "Fixed number of sampled edges");
  prob->excludes(samples);
  cmd->add_option("--design", s.design, "Edge weighting")
      ->check(CLI::IsMember({"uniform", "kcore"}))
      ->capture_default_str();
  cmd->add_flag("--replacement", s.replacement, "Draw with replacement (fixed size only)");
  cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  cmd->add_option("--ci", s.ci, "Confidence level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--runs", s.runs, "Independent repetitions (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);
}

InputFormat parse_format(const std::string& f) {
  if (f == "edgelist") return InputFormat::edge_list;
  if (f == "mtx") return InputFormat::matrix_market;
  if (f == "canonical") return InputFormat::canonical;
  return InputFormat::automatic;
}

Graph load(const Common& c) {
  auto t0 = std::chrono::steady_clock::now();
  Graph g = load_graph_file(c.graph, parse_format(c.format));
  if (!c.quiet) {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "loaded " << c.graph << ": n=" << g.num_vertices() << " m=" << g.num_edges() << " (" << s << " s)\n";
  }
  return g;
}

std::optional<SampleDesign> make_design(const Sampling& s, std::uint64_t seed) {
  if (!s.prob && !s.samples) {
    if (s.replacement) throw UsageError("--replacement needs --samples");
    return std::nullopt;
  }
  if (s.replacement && s.prob) throw UsageError("--replacement applies to --samples only");
  Weighting w = s.design == "kcore" ? Weighting::kcore : Weighting::uniform;
  if (s.prob) return SampleDesign::bernoulli(*s.prob, seed, w);
  return SampleDesign::fixed(*s.samples, seed, s.replacement, w);
}

Json config_json(const std::string& command, const Common& c, bool parallel = true) {
  Json j;
  j["command"] = command;
  j["graph"] = c.graph;
  j["format"] = c.format;
  if (parallel) j["workers"] = c.workers;
  return j;
}

Json sampling_json(const Sampling& s) {
  Json j;
  if (s.prob) j["probability"] = *s.prob;
  if (s.samples) j["samples"] = *s.samples;
  j["design"] = s.design;
  j["replacement"] = s.replacement;
  j["seed"] = s.seed;
  j["confidence"] = s.ci;
  j["runs"] = s.runs;
  return j;
}

EngineOptions engine(const Common& c) {
  EngineOptions opt;
  opt.workers = c.workers;
  return opt;
}

void emit(Json j, const Common& c, double seconds, const std::string& tsv) {
  if (c.tsv) {
    std::cout << tsv;
    return;
  }
  j["volatile"] = {{"wall_seconds", seconds}};
  std::cout << j.dump(2) << "\n";
}

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int cmd_exact(const Common& c) {
  Graph g = load(c);
  auto t0 = Clock::now();
  auto est = exact_counts(g, engine(c));
  Json j;
  j["config"] = config_json("exact", c);
  j["result"] = report::estimate_json(est);
  emit(std::move(j), c, since(t0), report::counts_tsv(est));
  return kOk;
}

int cmd_estimate(const Common& c, const Sampling& s) {
  if (!s.prob && !s.samples) throw UsageError("estimate needs --prob or --samples");
  Graph g = load(c);
  auto t0 = Clock::now();
  const double alpha = 1.0 - s.ci;
  Json runs = Json::array();
  std::string tsv;
  RealVector mean{};
  for (std::size_t r = 0; r < s.runs; ++r) {
    auto design = *make_design(s, s.seed + r);
    auto est = estimate(g, design, engine(c), alpha);
    if (!c.quiet && s.runs > 1) std::cerr << "run " << (r + 1) << "/" << s.runs << "\n";
    Json one = report::estimate_json(est);
    one["seed"] = design.seed;
    runs.push_back(std::move(one));
    for (std::size_t i = 0; i < kPatternCount; ++i) mean[i] += est.x[i] / static_cast<double>(s.runs);
    if (s.runs > 1) tsv += "# seed " + std::to_string(design.seed) + "\n";
    tsv += report::counts_tsv(est);
  }
  Json j;
  j["config"] = config_json("estimate", c);
  j["config"]["sampling"] = sampling_json(s);
  if (s.runs == 1) {
    j["result"] = runs[0];
  } else {
    j["runs"] = std::move(runs);
    Json m = Json::object();
    for (const auto& p : kPatterns) m[std::string(p.name)] = mean[slot(p.id)];
    j["mean"] = std::move(m);
  }
  emit(std::move(j), c, since(t0), tsv);
  return kOk;
}

std::pair<VertexId, VertexId> parse_edge(const Graph& g, const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--edge expects U,V");
  auto a = g.find_label(text.substr(0, comma));
  auto b = g.find_label(text.substr(comma + 1));
  if (!a || !b) throw UsageError("--edge names a vertex that is not in the graph");
  return {*a, *b};
}

int cmd_micro(const Common& c, const std::string& edge, double pe, std::uint64_t seed) {
  Graph g = load(c);
  auto t0 = Clock::now();
  auto [a, b] = parse_edge(g, edge);
  auto e = g.find_edge(a, b);
  if (!e) throw UsageError("no edge " + edge + " in the graph");
  auto me = micro_counts(g, *e, pe, seed);
  Json j;
  j["config"] = config_json("micro", c, false);
  j["config"]["edge"] = edge;
  j["config"]["p_e"] = pe;
  j["config"]["seed"] = seed;
  j["result"] = report::micro_json(g, me);
  std::string tsv = "id\tname\tx\n";
  for (const auto& p : kPatterns) {
    if (p.id == 2) continue;
    tsv += std::to_string(p.id) + "\t" + std::string(p.name) + "\t" + report::format_value(me[p.id]) + "\n";
  }
  emit(std::move(j), c, since(t0), tsv);
  return kOk;
}

int cmd_adaptive(const Common& c, const AdaptiveConfig& cfg, const std::string& loss_name) {
  Graph g = load(c);
  auto t0 = Clock::now();
  auto res = adaptive_estimate(g, cfg, engine(c));
  if (!c.quiet)
    std::cerr << "adaptive: " << res.trace.iterations.size() << " iterations, delta " << res.delta << "\n";
  Json j;
  j["config"] = config_json("adaptive", c);
  j["config"]["bound"] = cfg.beta;
  j["config"]["tmax"] = cfg.t_max;
  j["config"]["loss"] = loss_name;
  j["config"]["epsilon"] = cfg.epsilon;
  if (cfg.phi0) j["config"]["phi0"] = *cfg.phi0;
  j["config"]["seed"] = cfg.seed;
  j["delta"] = res.delta;
  j["trace"] = report::trace_json(res.trace);
  j["result"] = report::estimate_json(res.estimate);
  emit(std::move(j), c, since(t0), report::trace_tsv(res.trace) + "\n" + report::counts_tsv(res.estimate));
  return kOk;
}

int cmd_gfd(const Common& c, const Sampling& s, const std::string& variant_name) {
  Graph g = load(c);
  auto t0 = Clock::now();
  GfdVariant variant = variant_name == "connected"      ? GfdVariant::connected
                       : variant_name == "disconnected" ? GfdVariant::disconnected
                                                        : GfdVariant::combined;
  auto design = make_design(s, s.seed);
  auto est = design ? estimate(g, *design, engine(c), 1.0 - s.ci) : exact_counts(g, engine(c));
  auto f = gfd(est, variant);
  auto [lo, hi] = gfd_range(variant);
  Json j;
  j["config"] = config_json("gfd", c);
  j["config"]["variant"] = variant_name;
  if (design) j["config"]["sampling"] = sampling_json(s);
  Json dist = Json::object();
  std::string tsv = "id\tname\tfrequency\n";
  for (int id = lo; id <= hi; ++id) {
    double v = f[static_cast<std::size_t>(id - lo)];
    dist[std::string(pattern_name(id))] = v;
    tsv += std::to_string(id) + "\t" + std::string(pattern_name(id)) + "\t" + report::format_value(v) + "\n";
  }
  j["gfd"] = std::move(dist);
  emit(std::move(j), c, since(t0), tsv);
  return kOk;
}

int cmd_max(const Common& c, const Sampling& s, const std::string& pattern) {
  auto id = pattern_by_name(pattern);
  if (!id) throw UsageError("unknown pattern '" + pattern + "'");
  Graph g = load(c);
  auto t0 = Clock::now();
  auto design = make_design(s, s.seed).value_or(SampleDesign::bernoulli(1.0, s.seed,
                                                                        s.design == "kcore" ? Weighting::kcore : Weighting::uniform));
  auto r = max_graphlet_estimate(g, *id, design);
  auto [u, v] = g.edge(r.edge);
  Json j;
  j["config"] = config_json("max", c, false);
  j["config"]["sampling"] = sampling_json(s);
  j["pattern"] = std::string(pattern_name(*id));
  j["Z"] = r.z;
  j["edge"] = {g.label(u), g.label(v)};
  j["design"] = s.design;
  j["p"] = design.mode == SampleMode::probability ? Json(design.probability) : Json(nullptr);
  j["sampled_edges"] = r.sampled;
  j["seed"] = design.seed;
  std::string tsv = "pattern\tZ\tu\tv\n" + std::string(pattern_name(*id)) + "\t" + report::format_value(r.z) + "\t" +
                    g.label(u) + "\t" + g.label(v) + "\n";
  emit(std::move(j), c, since(t0), tsv);
  return kOk;
}

int cmd_oracle(const Common& c, std::size_t cap) {
  Graph g = load(c);
  auto t0 = Clock::now();
  auto y = oracle::brute_force_counts(g, cap);
  Json counts = Json::object();
  std::string tsv = "id\tname\tcount\n";
  for (const auto& p : kPatterns) {
    counts[std::string(p.name)] = {{"id", p.id}, {"count", Json::parse(to_string(y[slot(p.id)]))}};
    tsv += std::to_string(p.id) + "\t" + std::string(p.name) + "\t" + to_string(y[slot(p.id)]) + "\n";
  }
  Json j;
  j["config"] = config_json("oracle", c, false);
  j["config"]["cap"] = cap;
  j["counts"] = std::move(counts);
  emit(std::move(j), c, since(t0), tsv);
  return kOk;
}

int cmd_verify(const Common& c, std::size_t cap) {
  Graph g = load(c);
  auto y = oracle::brute_force_counts(g, cap);
  auto est = exact_counts(g, engine(c));
  bool ok = est.exact.has_value();
  for (std::size_t i = 0; ok && i < kPatternCount; ++i) ok = est.exact->at(i) == to_signed(y[i]);
  if (!ok && !c.quiet && est.exact)
    for (const auto& p : kPatterns)
      if (est.exact->at(slot(p.id)) != to_signed(y[slot(p.id)]))
        std::cerr << p.name << ": exact " << to_string(est.exact->at(slot(p.id))) << " oracle "
                  << to_string(y[slot(p.id)]) << "\n";
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and sampled counts of 3- and 4-node graphlets"};
  app.require_subcommand(1);
  Common common;
  common.workers = default_workers();
  Sampling sampling;

  auto* exact = app.add_subcommand("exact", "Exact counts of all 17 patterns");
  add_common(exact, common, true);

  auto* est = app.add_subcommand("estimate", "Estimated counts with confidence bounds");
  add_common(est, common, true);
  add_sampling(est, sampling);

  std::string edge;
  double pe = 1.0;
  std::uint64_t micro_seed = 0;
  auto* micro = app.add_subcommand("micro", "Per-edge counts");
  add_common(micro, common, false);
  micro->add_option("--edge", edge, "Edge as U,V using input labels")->required();
  micro->add_option("--pe", pe, "Neighbor sampling fraction in (0, 1]")->capture_default_str();
  micro->add_option("--seed", micro_seed, "Random seed")->capture_default_str();

  AdaptiveConfig acfg;
  std::string loss_name = "max-relative-error";
  double phi0 = 0;
  auto* adaptive = app.add_subcommand("adaptive", "Grow the sample until estimates stabilize");
  add_common(adaptive, common, true);
  adaptive->add_option("--bound", acfg.beta, "Error bound in [0, 1]")->required();
  adaptive->add_option("--tmax", acfg.t_max, "Iteration cap")->capture_default_str();
  adaptive->add_option("--loss", loss_name, "Stopping loss")
      ->check(CLI::IsMember({"max-relative-error", "ks", "l1"}))
      ->capture_default_str();
  auto* phi_opt = adaptive->add_option("--phi0", phi0, "Initial fraction of remaining edges");
  adaptive->add_option("--seed", acfg.seed, "Random seed")->capture_default_str();

  std::string variant = "connected";
  auto* gfd_cmd = app.add_subcommand("gfd", "Graphlet frequency distribution");
  add_common(gfd_cmd, common, true);
  add_sampling(gfd_cmd, sampling);
  gfd_cmd->add_option("--variant", variant, "Pattern subset")
      ->check(CLI::IsMember({"connected", "disconnected", "combined"}))
      ->capture_default_str();

  std::string pattern;
  auto* max_cmd = app.add_subcommand("max", "Largest per-edge count of one pattern over sampled edges");
  add_common(max_cmd, common, false);
  add_sampling(max_cmd, sampling);
  max_cmd->add_option("--pattern", pattern, "Pattern name such as 4-clique, or G7")->required();

  std::size_t cap = oracle::kDefaultVertexCap;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force counts (small graphs)");
  add_common(oracle_cmd, common, false);
  oracle_cmd->add_option("--cap", cap, "Largest vertex count accepted")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Compare exact counts with brute force");
  add_common(verify, common, true);
  verify->add_option("--cap", cap, "Largest vertex count accepted")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*exact) return cmd_exact(common);
    if (*est) return cmd_estimate(common, sampling);
    if (*micro) return cmd_micro(common, edge, pe, micro_seed);
    if (*adaptive) {
      if (*phi_opt) acfg.phi0 = phi0;
      acfg.loss = loss_name == "ks" ? LossKind::ks : loss_name == "l1" ? LossKind::l1 : LossKind::max_relative;
      return cmd_adaptive(common, acfg, loss_name);
    }
    if (*gfd_cmd) return cmd_gfd(common, sampling, variant);
    if (*max_cmd) return cmd_max(common, sampling, pattern);
    if (*oracle_cmd) return cmd_oracle(common, cap);
    if (*verify) return cmd_verify(common, cap);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return kResource;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}
