#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rumor/error.hpp"
#include "rumor/exact_oracle.hpp"
#include "rumor/generators.hpp"
#include "rumor/graph_io.hpp"
#include "rumor/harness.hpp"
#include "rumor/protocol.hpp"
#include "rumor/rng.hpp"
#include "rumor/spectral.hpp"
#include "rumor/theory.hpp"
#include "rumor/version.hpp"

namespace rumor::cli {
namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string family;
  std::size_t n = 0;
  double p = 0.0;
  std::size_t d = 0;
  double eps = 0.0;
  std::string protocol = "push";
  double q = 1.0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string n_list;
  std::string out;
  std::string graph;
  std::string suite;
  std::string start = "0";
  std::size_t max_rounds = 0;
  std::string trace;
  std::string target = "completion";
  std::size_t samples = 8;

  // Set after parsing from the CLI11 option counts.
  bool has_n = false, has_p = false, has_d = false, has_eps = false, has_seed = false,
       has_max_rounds = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  CLI::Option* n = nullptr;
  CLI::Option* p = nullptr;
  CLI::Option* d = nullptr;
  CLI::Option* eps = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* max_rounds = nullptr;
};

void add_family_flags(CLI::App& sub, Options& o, Flags& f) {
  sub.add_option("--family", o.family, "complete|star|gnp|regular|push-adversary|pp-adversary");
  f.n = sub.add_option("--n", o.n, "number of vertices");
  f.p = sub.add_option("--p", o.p, "edge probability (gnp)");
  f.d = sub.add_option("--d", o.d, "degree (regular)");
  f.eps = sub.add_option("--eps", o.eps, "adversary parameter in (0, 1/2)");
}

void add_seed_flag(CLI::App& sub, Options& o, Flags& f) {
  f.seed = sub.add_option("--seed", o.seed, "master seed");
}

void add_protocol_flags(CLI::App& sub, Options& o) {
  sub.add_option("--protocol", o.protocol, "push|pull|pp");
  sub.add_option("--q", o.q, "per-message success probability in (0, 1]");
}

FamilySpec family_spec(const Options& o, std::size_t n) {
  if (o.family.empty()) throw UsageError("--family is required");
  FamilySpec spec;
  spec.family = parse_family(o.family);
  spec.n = n;
  if (o.has_p) spec.p = o.p;
  if (o.has_d) spec.d = o.d;
  if (o.has_eps) spec.eps = o.eps;
  validate(spec);
  return spec;
}

ojson spec_json(const FamilySpec& spec) {
  ojson j;
  j["family"] = std::string(to_string(spec.family));
  j["n"] = spec.n;
  if (spec.p) j["p"] = *spec.p;
  if (spec.d) j["d"] = *spec.d;
  if (spec.eps) j["eps"] = *spec.eps;
  return j;
}

ojson meta(const std::string& command, ojson config) {
  ojson m;
  m["tool"] = kToolName;
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = std::move(config);
  return m;
}

void echo(std::ostream& err, const ojson& m) { err << "# resolved " << m.dump() << '\n'; }

std::uint64_t resolve_seed(const Options& o, bool required, const char* command) {
  if (o.has_seed) return o.seed;
  if (required) throw UsageError(std::string(command) + " requires --seed");
  const auto now = std::chrono::high_resolution_clock::now().time_since_epoch().count();
  return mix64(static_cast<std::uint64_t>(now));
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad --n-list entry '" + item + "'");
    }
    if (pos != item.size()) throw UsageError("bad --n-list entry '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError("--n-list is empty");
  return out;
}

std::optional<Vertex> parse_start(const std::string& text) {
  if (text == "random") return std::nullopt;
  try {
    std::size_t pos = 0;
    const auto v = std::stoul(text, &pos);
    if (pos == text.size()) return static_cast<Vertex>(v);
  } catch (const std::exception&) {
  }
  throw UsageError("--start must be a vertex index or 'random'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::parse_error, "cannot open " + path + " for writing");
  return f;
}

ExperimentConfig experiment(const Options& o, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.protocol = parse_protocol(o.protocol);
  cfg.q = o.q;
  cfg.trials = o.trials;
  cfg.master_seed = seed;
  cfg.start_vertex = parse_start(o.start);
  if (o.has_max_rounds) cfg.max_rounds = o.max_rounds;
  return cfg;
}

ojson experiment_json(const ExperimentConfig& cfg) {
  ojson j;
  j["protocol"] = std::string(to_string(cfg.protocol));
  j["q"] = cfg.q;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.master_seed;
  if (cfg.start_vertex) {
    j["start"] = *cfg.start_vertex;
  } else {
    j["start"] = "random";
  }
  if (cfg.max_rounds) j["max_rounds"] = *cfg.max_rounds;
  j["threads"] = resolve_threads(cfg.threads);
  return j;
}

// Fails the run when a connected graph left trials unfinished.
int completion_gate(const SweepResult& r, bool connected, std::ostream& err) {
  for (const auto& s : r.summaries) {
    if (connected && s.completion_rate < 1.0) {
      err << "error: " << s.family << " n=" << s.n << " completed only " << s.completed << "/"
          << s.trials << " trials on a connected graph\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.has_n) throw UsageError("generate requires --n");
  if (o.out.empty()) throw UsageError("generate requires --out");
  const auto spec = family_spec(o, o.n);
  const auto seed = resolve_seed(o, false, "generate");
  ojson config = spec_json(spec);
  config["seed"] = seed;
  config["out"] = o.out;
  const auto m = meta("generate", config);
  echo(err, m);
  const Graph g = generate(spec, seed);
  save_graph(o.out, g, m);
  out << ojson{{"n", g.order()}, {"edges", g.edge_count()}, {"min_degree", g.min_degree()},
               {"max_degree", g.max_degree()}, {"out", o.out}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto seed = resolve_seed(o, false, "simulate");
  ExperimentConfig cfg = experiment(o, seed);
  cfg.keep_results = !o.trace.empty();

  ojson config = experiment_json(cfg);
  Graph g;
  std::string label;
  if (!o.graph.empty()) {
    if (!o.family.empty()) throw UsageError("give either --graph or --family, not both");
    g = load_graph(o.graph);
    label = "file:" + o.graph;
    config["graph"] = o.graph;
  } else {
    if (!o.has_n) throw UsageError("simulate requires --n (or --graph)");
    const auto spec = family_spec(o, o.n);
    const std::uint64_t graph_seed = derive_seed(seed, {0, spec.n, hash_label("graph")});
    g = generate(spec, graph_seed);
    label = family_label(spec);
    config["graph"] = spec_json(spec);
    config["graph_seed"] = graph_seed;
  }
  const auto m = meta("simulate", config);
  echo(err, m);

  const SweepResult r = run_trials_on(g, label, cfg);
  if (!o.out.empty()) {
    auto f = open_out(o.out);
    write_trials_csv(f, r.trials);
  }
  if (!o.trace.empty() && !r.results.empty()) {
    auto f = open_out(o.trace);
    write_trace_jsonl(f, r.results.front().trace);
  }
  ojson doc = summary_to_json(r, m);
  auto rounds = ojson::array();
  for (const auto& row : r.trials) rounds.push_back(row.rounds);
  doc["T"] = std::move(rounds);
  out << doc.dump(2) << '\n';
  return completion_gate(r, is_connected(g), err);
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const auto seed = resolve_seed(o, true, "sweep");
  if (o.n_list.empty()) throw UsageError("sweep requires --n-list");
  if (o.out.empty()) throw UsageError("sweep requires --out (output prefix)");
  ExperimentConfig cfg = experiment(o, seed);
  cfg.n_values = parse_n_list(o.n_list);
  cfg.families.push_back(family_spec(o, cfg.n_values.front()));
  cfg.csv_path = o.out + ".csv";
  cfg.summary_path = o.out + ".summary.json";

  ojson config = experiment_json(cfg);
  config["graph"] = spec_json(cfg.families.front());
  config["graph"].erase("n");
  config["n_list"] = cfg.n_values;
  config["csv"] = cfg.csv_path->string();
  config["summary"] = cfg.summary_path->string();
  const auto m = meta("sweep", config);
  echo(err, m);

  const SweepResult r = run_trials(cfg);
  {
    auto f = open_out(cfg.csv_path->string());
    write_trials_csv(f, r.trials);
  }
  ojson doc = summary_to_json(r, m);
  if (r.summaries.size() >= 3) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : r.summaries) pts.emplace_back(static_cast<double>(s.n), s.mean_rounds);
    const auto fit = fit_slope(pts);
    doc["slope_fit"] = {{"slope", round_significant(fit.slope)},
                        {"intercept", round_significant(fit.intercept)},
                        {"max_residual", round_significant(fit.max_residual)},
                        {"c_P(q)", round_significant(theory::protocol_constant(cfg.protocol, cfg.q))}};
  }
  {
    auto f = open_out(cfg.summary_path->string());
    f << doc.dump(2) << '\n';
  }
  out << doc.dump(2) << '\n';
  return completion_gate(r, true, err);
}

ojson spectral_suite(std::uint64_t seed, bool& pass) {
  ojson doc;
  // Closed-form top eigenvalue of the two-block matrix against the 2x2 solve.
  double worst = 0.0;
  bool strictly_above = true;
  for (int i = 0; i < 50; ++i) {
    const double eps = 0.49 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double q = 0.02 + 0.98 * j / 49.0;
      const double closed = theory::lambda_max_pp(eps, q);
      worst = std::max(worst, std::abs(closed - theory::top_eigenvalue(theory::two_block_matrix(eps, q))));
      if (eps > 0.0 && !(closed > 1.0 + 2.0 * q)) strictly_above = false;
    }
  }
  doc["lambda_max_grid"] = {{"max_abs_error", worst}, {"above_1_plus_2q", strictly_above},
                            {"pass", worst <= 1e-12 && strictly_above}};
  pass = worst <= 1e-12 && strictly_above;

  // Eigenpair reconstruction on a few random graphs.
  double recon = 0.0;
  for (std::uint64_t k = 0; k < 4; ++k) {
    const Graph g = gnp_graph(16 + 16 * k, 0.3, derive_seed(seed, {k}));
    const auto sp = adjacency_spectrum(g);
    const std::size_t n = g.order();
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        double a = 0.0;
        for (std::size_t e = 0; e < n; ++e) a += sp.eigenvalues[e] * sp.eigenvectors[e][u] * sp.eigenvectors[e][v];
        recon = std::max(recon, std::abs(a - (g.adjacent(u, v) ? 1.0 : 0.0)));
      }
    }
  }
  doc["reconstruction"] = {{"max_abs_error", recon}, {"pass", recon <= 1e-9}};
  pass = pass && recon <= 1e-9;

  const double k4 = spectral_profile(Graph::complete(4)).lambda;
  doc["known_spectra"] = {{"K4_lambda", k4}, {"pass", std::abs(k4 - 1.0) <= 1e-9}};
  pass = pass && std::abs(k4 - 1.0) <= 1e-9;
  doc["pass"] = pass;
  return doc;
}

ojson oracle_suite(std::uint64_t seed, bool& pass) {
  ojson doc;
  auto rows = ojson::array();
  pass = true;
  std::uint64_t k = 0;
  for (const auto& inst : exact::reference_instances()) {
    const auto r = exact::monte_carlo_agreement(inst.graph, inst.informed, inst.config, 100000,
                                                derive_seed(seed, {k++}));
    rows.push_back({{"instance", inst.name}, {"protocol", std::string(to_string(inst.config.protocol))},
                    {"q", inst.config.q}, {"exact_mean", r.exact_mean}, {"sample_mean", r.sample_mean},
                    {"variance", r.exact_variance}, {"z", r.z}, {"pass", r.pass}});
    pass = pass && r.pass;
  }
  doc["engine_vs_exact"] = std::move(rows);
  const double qs[] = {0.3, 0.7, 1.0};
  const auto formulas = exact::expectation_sweep(5, qs);
  doc["expectation_formulas"] = exact::to_json(formulas, false);
  pass = pass && formulas.pass();
  doc["pass"] = pass;
  return doc;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto seed = resolve_seed(o, true, "verify");
  if (o.suite.empty()) throw UsageError("verify requires --suite oracle|self-bounding|spectral");
  const auto m = meta("verify", ojson{{"suite", o.suite}, {"seed", seed}});
  echo(err, m);
  ojson report;
  bool pass = false;
  if (o.suite == "self-bounding") {
    const double qs[] = {0.3, 0.7, 1.0};
    const auto sweep = exact::self_bounding_sweep(5, qs, !o.out.empty());
    pass = sweep.pass();
    report = exact::to_json(sweep, !o.out.empty());
  } else if (o.suite == "oracle") {
    report = oracle_suite(seed, pass);
  } else if (o.suite == "spectral") {
    report = spectral_suite(seed, pass);
  } else {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  report["meta"] = m;
  if (!o.out.empty()) {
    auto f = open_out(o.out);
    f << report.dump(2) << '\n';
    // Keep stdout readable for the record-heavy suites.
    report.erase("records");
  }
  out << report.dump(2) << '\n';
  return pass ? kExitOk : kExitFailure;
}

int cmd_predict(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.has_n) throw UsageError("predict requires --n");
  theory::PredictionInputs in;
  in.family = o.family.empty() ? Family::complete : parse_family(o.family);
  in.protocol = parse_protocol(o.protocol);
  in.n = static_cast<double>(o.n);
  in.q = o.q;
  if (o.has_eps) in.eps = o.eps;
  if (o.target == "completion") {
    in.target = theory::Target::completion;
  } else if (o.target == "threshold") {
    in.target = theory::Target::threshold;
  } else {
    throw UsageError("--target must be completion or threshold");
  }
  ojson config{{"family", std::string(to_string(in.family))}, {"protocol", std::string(to_string(in.protocol))},
               {"n", o.n}, {"q", in.q}, {"target", theory::to_string(in.target)}};
  if (in.eps) config["eps"] = *in.eps;
  echo(err, meta("predict", config));

  auto emit = [&](const theory::TheoryPrediction& p) {
    ojson j;
    j["kind"] = p.kind == theory::TheoryPrediction::Kind::constant ? "constant" : "rounds";
    j["value"] = round_significant(p.value);
    j["formula_id"] = p.formula_id;
    out << j.dump() << '\n';
  };
  emit(theory::constant_prediction(in.protocol, in.q));
  emit(theory::predict_rounds(in));
  return kExitOk;
}

int cmd_diagnose(const Options& o, std::ostream& out, std::ostream& err) {
  const auto seed = resolve_seed(o, false, "diagnose");
  Graph g;
  ojson config{{"seed", seed}, {"samples", o.samples}};
  if (!o.graph.empty()) {
    g = load_graph(o.graph);
    config["graph"] = o.graph;
  } else {
    if (!o.has_n) throw UsageError("diagnose requires --n (or --graph)");
    const auto spec = family_spec(o, o.n);
    g = generate(spec, derive_seed(seed, {0, spec.n, hash_label("graph")}));
    config["graph"] = spec_json(spec);
  }
  echo(err, meta("diagnose", config));

  const auto profile = spectral_profile(g);
  ojson doc;
  doc["n"] = g.order();
  doc["edges"] = g.edge_count();
  doc["connected"] = is_connected(g);
  doc["profile"] = {{"delta", profile.delta}, {"Delta", profile.Delta},
                    {"lambda", round_significant(profile.lambda)}, {"mu1", round_significant(profile.mu1)},
                    {"method", to_string(profile.method)}};
  auto samples = ojson::array();
  if (g.order() >= 2) {
    Rng rng(derive_seed(seed, {hash_label("subsets")}));
    std::vector<Vertex> perm(g.order());
    for (Vertex v = 0; v < g.order(); ++v) perm[v] = v;
    std::uniform_int_distribution<std::size_t> size_dist(1, g.order() - 1);
    for (std::size_t i = 0; i < o.samples; ++i) {
      std::shuffle(perm.begin(), perm.end(), rng);
      const std::size_t k = size_dist(rng);
      const std::span<const Vertex> subset(perm.data(), k);
      const double dev = mixing_deviation(g, subset);
      const double s = static_cast<double>(k);
      samples.push_back({{"size", k}, {"boundary", edge_boundary(g, subset)},
                         {"deviation", round_significant(dev)},
                         {"lambda_bound", round_significant(profile.lambda * std::sqrt(s * (static_cast<double>(g.order()) - s)))}});
    }
  }
  doc["mixing"] = std::move(samples);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rumour-spreading laboratory: push, pull and push&pull on graphs", "rumor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  Flags gen_f, sim_f, sweep_f, ver_f, pred_f, diag_f;
  auto* gen = app.add_subcommand("generate", "write a graph file");
  add_family_flags(*gen, o, gen_f);
  add_seed_flag(*gen, o, gen_f);
  gen->add_option("--out", o.out, "output graph JSON");

  auto* sim = app.add_subcommand("simulate", "run trials on one graph");
  add_family_flags(*sim, o, sim_f);
  add_seed_flag(*sim, o, sim_f);
  add_protocol_flags(*sim, o);
  sim->add_option("--graph", o.graph, "graph JSON file instead of --family");
  sim->add_option("--trials", o.trials, "number of trials");
  sim->add_option("--start", o.start, "start vertex index or 'random'");
  sim_f.max_rounds = sim->add_option("--max-rounds", o.max_rounds, "round cap");
  sim->add_option("--out", o.out, "per-trial CSV");
  sim->add_option("--trace", o.trace, "JSON-lines round trace of trial 0");

  auto* sweep = app.add_subcommand("sweep", "run an n-grid and fit the slope against ln n");
  add_family_flags(*sweep, o, sweep_f);
  add_seed_flag(*sweep, o, sweep_f);
  add_protocol_flags(*sweep, o);
  sweep->add_option("--n-list", o.n_list, "comma-separated increasing n values");
  sweep->add_option("--trials", o.trials, "trials per n");
  sweep->add_option("--start", o.start, "start vertex index or 'random'");
  sweep_f.max_rounds = sweep->add_option("--max-rounds", o.max_rounds, "round cap");
  sweep->add_option("--out", o.out, "output prefix (<out>.csv, <out>.summary.json)");

  auto* verify = app.add_subcommand("verify", "run an exact or spectral verification suite");
  add_seed_flag(*verify, o, ver_f);
  verify->add_option("--suite", o.suite, "oracle|self-bounding|spectral");
  verify->add_option("--out", o.out, "full JSON report");

  auto* predict = app.add_subcommand("predict", "print closed-form runtime predictions");
  predict->add_option("--family", o.family, "graph family (default complete)");
  pred_f.n = predict->add_option("--n", o.n, "number of vertices");
  pred_f.eps = predict->add_option("--eps", o.eps, "adversary parameter");
  add_protocol_flags(*predict, o);
  predict->add_option("--target", o.target, "completion|threshold");

  auto* diagnose = app.add_subcommand("diagnose", "spectral profile and mixing deviations");
  add_family_flags(*diagnose, o, diag_f);
  add_seed_flag(*diagnose, o, diag_f);
  diagnose->add_option("--graph", o.graph, "graph JSON file instead of --family");
  diagnose->add_option("--samples", o.samples, "number of random vertex subsets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const Flags* f : {&gen_f, &sim_f, &sweep_f, &ver_f, &pred_f, &diag_f}) {
    auto counted = [](CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };
    o.has_n |= counted(f->n);
    o.has_p |= counted(f->p);
    o.has_d |= counted(f->d);
    o.has_eps |= counted(f->eps);
    o.has_seed |= counted(f->seed);
    o.has_max_rounds |= counted(f->max_rounds);
  }

  try {
    if (gen->parsed()) return cmd_generate(o, out, err);
    if (sim->parsed()) return cmd_simulate(o, out, err);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (predict->parsed()) return cmd_predict(o, out, err);
    if (diagnose->parsed()) return cmd_diagnose(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::generation_failure:
      case ErrorKind::instance_too_large:
        return kExitFailure;
      default:
        return kExitUsage;
    }
  }
  return kExitUsage;
}

}  // namespace rumor::cli
