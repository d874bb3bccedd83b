#include "rumor/exact_oracle.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "rumor/error.hpp"
#include "rumor/rng.hpp"

namespace rumor::exact {
namespace {

constexpr double kTolerance = 1e-12;

struct Caller {
  Vertex vertex;
  std::size_t degree;
};

const Protocol kAllProtocols[] = {Protocol::push, Protocol::pull, Protocol::push_pull};

}  // namespace

Mask to_mask(std::span<const Vertex> vertices) {
  Mask m = 0;
  for (Vertex v : vertices) {
    if (v >= kMaxVertices) {
      throw Error(ErrorKind::instance_too_large, "vertex index beyond bitmask width");
    }
    m |= Mask{1} << v;
  }
  return m;
}

std::vector<Vertex> from_mask(Mask mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; mask != 0; ++v, mask >>= 1) {
    if (mask & 1U) out.push_back(v);
  }
  return out;
}

std::vector<double> RoundPMF::size_pmf() const {
  std::vector<double> pmf(n + 1, 0.0);
  for (const auto& [mask, p] : outcomes) pmf[static_cast<std::size_t>(std::popcount(mask))] += p;
  return pmf;
}

double RoundPMF::mean() const {
  double m = 0.0;
  for (const auto& [mask, p] : outcomes) m += p * std::popcount(mask);
  return m;
}

double RoundPMF::variance() const {
  const double mu = mean();
  double v = 0.0;
  for (const auto& [mask, p] : outcomes) {
    const double d = std::popcount(mask) - mu;
    v += p * d * d;
  }
  return v;
}

double RoundPMF::total_probability() const {
  double s = 0.0;
  for (const auto& [mask, p] : outcomes) s += p;
  return s;
}

RoundPMF exact_round_pmf(const Graph& g, std::span<const Vertex> informed,
                         const ProtocolConfig& cfg) {
  const std::size_t n = g.order();
  if (n > kMaxVertices) {
    throw Error(ErrorKind::instance_too_large, "exact oracle limited to 20 vertices");
  }
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) throw Error(ErrorKind::invalid_spec, "q must lie in (0, 1]");
  for (Vertex v : informed) {
    if (v >= n) throw Error(ErrorKind::out_of_range, "informed vertex out of range");
  }
  const Mask start = to_mask(informed);
  if (start == 0) throw Error(ErrorKind::invalid_spec, "informed set must be nonempty");
  auto in_start = [start](Vertex v) { return ((start >> v) & 1U) != 0; };

  std::vector<Caller> callers;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == 0) continue;
    const bool active = cfg.protocol == Protocol::push_pull ||
                        (cfg.protocol == Protocol::push ? in_start(v) : !in_start(v));
    if (active) callers.push_back({v, g.degree(v)});
  }
  if (callers.size() > kMaxChoosers) {
    throw Error(ErrorKind::instance_too_large,
                std::to_string(callers.size()) + " callers exceed the limit of 12");
  }
  std::uint64_t configurations = 1;
  for (const auto& c : callers) {
    configurations *= c.degree;
    if (configurations > kMaxConfigurations) {
      throw Error(ErrorKind::instance_too_large, "too many neighbour-choice configurations");
    }
  }

  std::vector<std::vector<Vertex>> rows(n);
  for (Vertex v = 0; v < n; ++v) rows[v] = g.neighbors(v);

  std::vector<double> mass(std::size_t{1} << n, 0.0);
  std::vector<std::size_t> choice(callers.size(), 0);
  std::vector<unsigned> hits(n, 0);
  std::vector<Vertex> targets;
  std::vector<double> reach;
  double config_weight = 1.0;
  for (const auto& c : callers) config_weight /= static_cast<double>(c.degree);

  for (std::uint64_t k = 0; k < configurations; ++k) {
    std::fill(hits.begin(), hits.end(), 0U);
    for (std::size_t i = 0; i < callers.size(); ++i) {
      const Vertex u = callers[i].vertex;
      const Vertex w = rows[u][choice[i]];
      if (in_start(u) && !in_start(w)) ++hits[w];
      if (!in_start(u) && in_start(w)) ++hits[u];
    }
    targets.clear();
    reach.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (hits[v] == 0) continue;
      targets.push_back(v);
      reach.push_back(1.0 - std::pow(1.0 - cfg.q, static_cast<double>(hits[v])));
    }
    const std::size_t subsets = std::size_t{1} << targets.size();
    for (std::size_t s = 0; s < subsets; ++s) {
      double p = config_weight;
      Mask outcome = start;
      for (std::size_t j = 0; j < targets.size() && p > 0.0; ++j) {
        if ((s >> j) & 1U) {
          p *= reach[j];
          outcome |= Mask{1} << targets[j];
        } else {
          p *= 1.0 - reach[j];
        }
      }
      if (p > 0.0) mass[outcome] += p;
    }
    // Odometer over the callers' neighbour indices.
    for (std::size_t i = 0; i < callers.size(); ++i) {
      if (++choice[i] < callers[i].degree) break;
      choice[i] = 0;
    }
  }

  RoundPMF pmf;
  pmf.n = n;
  pmf.start = start;
  for (Mask m = 0; m < mass.size(); ++m) {
    if (mass[m] > 0.0) pmf.outcomes.emplace(m, mass[m]);
  }
  return pmf;
}

SelfBoundingReport verify_self_bounding(const Graph& g, std::span<const Vertex> informed,
                                        const ProtocolConfig& cfg) {
  const auto pmf = exact_round_pmf(g, informed, cfg);
  SelfBoundingReport r;
  r.mean = pmf.mean();
  r.variance = pmf.variance();
  r.pass = r.variance <= r.mean + kTolerance;
  return r;
}

ExpectationReport verify_expectation_formulas(const Graph& g, std::span<const Vertex> informed,
                                              double q) {
  const Mask start = to_mask(informed);
  auto in_start = [start](Vertex v) { return ((start >> v) & 1U) != 0; };
  ExpectationReport r;
  for (Vertex u = 0; u < g.order(); ++u) {
    if (in_start(u)) continue;
    const auto nb = g.neighbors(u);
    std::size_t informed_nb = 0;
    double survive_push = 1.0;
    for (Vertex i : nb) {
      if (!in_start(i)) continue;
      ++informed_nb;
      survive_push *= 1.0 - q / static_cast<double>(g.degree(i));
    }
    r.pull_formula +=
        nb.empty() ? 1.0 : 1.0 - q * static_cast<double>(informed_nb) / static_cast<double>(nb.size());
    r.push_formula += survive_push;
  }
  ProtocolConfig cfg;
  cfg.q = q;
  cfg.protocol = Protocol::pull;
  r.pull_exact = exact_round_pmf(g, informed, cfg).mean_uninformed();
  cfg.protocol = Protocol::push;
  r.push_exact = exact_round_pmf(g, informed, cfg).mean_uninformed();
  r.pass = std::abs(r.pull_exact - r.pull_formula) <= kTolerance &&
           std::abs(r.push_exact - r.push_formula) <= kTolerance;
  return r;
}

std::vector<Graph> connected_graphs(std::size_t n) {
  if (n > 6) throw Error(ErrorKind::instance_too_large, "graph enumeration limited to n <= 6");
  std::vector<Edge> slots;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<Graph> out;
  std::vector<Edge> edges;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots.size()); ++bits) {
    edges.clear();
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if ((bits >> i) & 1U) edges.push_back(slots[i]);
    }
    Graph g = Graph::from_edges(n, edges);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

SweepReport self_bounding_sweep(std::size_t max_n, std::span<const double> qs, bool keep_records) {
  SweepReport report;
  report.suite = "self-bounding";
  std::size_t graph_index = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const Graph& g : connected_graphs(n)) {
      for (Mask informed = 1; informed < (Mask{1} << n); ++informed) {
        const auto set = from_mask(informed);
        for (Protocol protocol : kAllProtocols) {
          for (double q : qs) {
            ProtocolConfig cfg;
            cfg.protocol = protocol;
            cfg.q = q;
            const auto r = verify_self_bounding(g, set, cfg);
            ++report.cases;
            report.worst_margin = std::max(report.worst_margin, r.variance - r.mean);
            if (!r.pass) ++report.failures;
            if (keep_records || !r.pass) {
              CaseRecord rec;
              rec.graph_index = graph_index;
              rec.n = n;
              rec.edges = g.edges();
              rec.informed = informed;
              rec.protocol = protocol;
              rec.q = q;
              rec.mean = r.mean;
              rec.variance = r.variance;
              rec.pass = r.pass;
              report.records.push_back(std::move(rec));
            }
          }
        }
      }
      ++graph_index;
    }
  }
  return report;
}

SweepReport expectation_sweep(std::size_t max_n, std::span<const double> qs, bool keep_records) {
  SweepReport report;
  report.suite = "expectation";
  std::size_t graph_index = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const Graph& g : connected_graphs(n)) {
      for (Mask informed = 1; informed < (Mask{1} << n); ++informed) {
        const auto set = from_mask(informed);
        for (double q : qs) {
          const auto r = verify_expectation_formulas(g, set, q);
          const struct {
            Protocol protocol;
            double formula;
            double exact;
          } rows[] = {{Protocol::pull, r.pull_formula, r.pull_exact},
                      {Protocol::push, r.push_formula, r.push_exact}};
          for (const auto& row : rows) {
            const double gap = std::abs(row.formula - row.exact);
            const bool pass = gap <= kTolerance;
            ++report.cases;
            report.worst_margin = std::max(report.worst_margin, gap - kTolerance);
            if (!pass) ++report.failures;
            if (keep_records || !pass) {
              CaseRecord rec;
              rec.graph_index = graph_index;
              rec.n = n;
              rec.edges = g.edges();
              rec.informed = informed;
              rec.protocol = row.protocol;
              rec.q = q;
              rec.formula = row.formula;
              rec.exact = row.exact;
              rec.pass = pass;
              report.records.push_back(std::move(rec));
            }
          }
        }
      }
      ++graph_index;
    }
  }
  return report;
}

AgreementReport monte_carlo_agreement(const Graph& g, std::span<const Vertex> informed,
                                      const ProtocolConfig& cfg, std::size_t repetitions,
                                      std::uint64_t seed, double max_z) {
  const auto pmf = exact_round_pmf(g, informed, cfg);
  AgreementReport r;
  r.exact_mean = pmf.mean();
  r.exact_variance = pmf.variance();

  RumourSpread spread(g, cfg);
  Rng rng(seed);
  double sum = 0.0;
  for (std::size_t i = 0; i < repetitions; ++i) {
    spread.reset(informed);
    spread.step(rng);
    sum += static_cast<double>(spread.informed_count());
  }
  r.sample_mean = sum / static_cast<double>(repetitions);
  r.standard_error = std::sqrt(r.exact_variance / static_cast<double>(repetitions));
  const double gap = std::abs(r.sample_mean - r.exact_mean);
  if (r.standard_error > 0.0) {
    r.z = gap / r.standard_error;
    r.pass = r.z <= max_z;
  } else {
    r.z = gap > kTolerance ? INFINITY : 0.0;
    r.pass = gap <= kTolerance;
  }
  return r;
}

std::vector<TinyInstance> reference_instances() {
  auto make = [](std::size_t n, std::initializer_list<Edge> edges) {
    return Graph::from_edges(n, std::vector<Edge>(edges));
  };
  const Graph k3 = Graph::complete(3);
  const Graph k4 = Graph::complete(4);
  const Graph k5 = Graph::complete(5);
  const Graph star5 = make(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const Graph path4 = make(4, {{0, 1}, {1, 2}, {2, 3}});
  const Graph cycle5 = make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  const Graph paw = make(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  const Graph diamond = make(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  const Graph bull = make(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}});
  const Graph k33 = make(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});

  auto inst = [](std::string name, const Graph& g, std::vector<Vertex> informed, Protocol p,
                 double q) {
    ProtocolConfig cfg;
    cfg.protocol = p;
    cfg.q = q;
    return TinyInstance{std::move(name), g, std::move(informed), cfg};
  };
  using P = Protocol;
  return {
      inst("K3 push {0,1} q=1", k3, {0, 1}, P::push, 1.0),
      inst("K3 pull {0} q=0.5", k3, {0}, P::pull, 0.5),
      inst("K3 pp {0} q=0.7", k3, {0}, P::push_pull, 0.7),
      inst("K4 push {0} q=0.3", k4, {0}, P::push, 0.3),
      inst("K4 pull {0,1} q=1", k4, {0, 1}, P::pull, 1.0),
      inst("K4 pp {0,1} q=0.5", k4, {0, 1}, P::push_pull, 0.5),
      inst("K5 push {0,1,2} q=0.7", k5, {0, 1, 2}, P::push, 0.7),
      inst("K5 pull {0} q=0.3", k5, {0}, P::pull, 0.3),
      inst("K5 pp {0,1} q=1", k5, {0, 1}, P::push_pull, 1.0),
      inst("star5 push {0} q=1", star5, {0}, P::push, 1.0),
      inst("star5 pull {1} q=0.7", star5, {1}, P::pull, 0.7),
      inst("star5 pp {1} q=0.5", star5, {1}, P::push_pull, 0.5),
      inst("path4 push {1} q=0.5", path4, {1}, P::push, 0.5),
      inst("path4 pp {0} q=1", path4, {0}, P::push_pull, 1.0),
      inst("cycle5 pull {0,2} q=0.7", cycle5, {0, 2}, P::pull, 0.7),
      inst("cycle5 pp {0} q=0.3", cycle5, {0}, P::push_pull, 0.3),
      inst("paw push {3} q=1", paw, {3}, P::push, 1.0),
      inst("diamond pull {0} q=0.5", diamond, {0}, P::pull, 0.5),
      inst("bull pp {3,4} q=0.7", bull, {3, 4}, P::push_pull, 0.7),
      inst("K33 push {0,1} q=0.5", k33, {0, 1}, P::push, 0.5),
  };
}

nlohmann::ordered_json to_json(const SweepReport& report, bool include_records) {
  nlohmann::ordered_json doc;
  doc["suite"] = report.suite;
  doc["cases"] = report.cases;
  doc["failures"] = report.failures;
  doc["worst_margin"] = report.worst_margin;
  doc["pass"] = report.pass();
  if (include_records || report.failures > 0) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& rec : report.records) {
      if (!include_records && rec.pass) continue;
      nlohmann::ordered_json row;
      auto edges = nlohmann::json::array();
      for (const auto& [u, v] : rec.edges) edges.push_back({u, v});
      row["instance"] = {{"n", rec.n}, {"edges", edges}, {"informed", from_mask(rec.informed)}};
      row["protocol"] = std::string(to_string(rec.protocol));
      row["q"] = rec.q;
      if (report.suite == "expectation") {
        row["formula"] = rec.formula;
        row["exact"] = rec.exact;
      } else {
        row["mean"] = rec.mean;
        row["variance"] = rec.variance;
      }
      row["pass"] = rec.pass;
      rows.push_back(std::move(row));
    }
    doc["records"] = std::move(rows);
  }
  return doc;
}

}  // namespace rumor::exact
