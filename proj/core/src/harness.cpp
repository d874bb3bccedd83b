#include "rumor/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "rumor/error.hpp"
#include "rumor/rng.hpp"

namespace rumor {
namespace {

// Runs fn(i) for i in [0, count) on a small worker pool. The first exception
// thrown by any worker is rethrown on the caller's thread.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void run_point(const Graph& g, const std::string& label, std::size_t family_index,
               const ExperimentConfig& cfg, std::uint64_t graph_seed, SweepResult& out) {
  const std::size_t n = g.order();
  std::vector<TrialRow> rows(cfg.trials);
  std::vector<TrialResult> results(cfg.keep_results ? cfg.trials : 0);

  parallel_for(cfg.trials, resolve_threads(cfg.threads), [&](std::size_t trial) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, {family_index, n, trial});
    ProtocolConfig pc;
    pc.protocol = cfg.protocol;
    pc.q = cfg.q;
    pc.max_rounds = cfg.max_rounds;
    pc.tilde_threshold_enabled = cfg.thresholds;
    if (cfg.start_vertex) {
      pc.start_vertex = *cfg.start_vertex;
    } else {
      Rng pick(derive_seed(seed, {hash_label("start")}));
      pc.start_vertex = static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, n - 1)(pick));
    }
    TrialResult r = simulate(g, pc, seed);
    TrialRow& row = rows[trial];
    row.family = label;
    row.n = n;
    row.protocol = cfg.protocol;
    row.q = cfg.q;
    row.trial = trial;
    row.seed = seed;
    row.start = pc.start_vertex;
    row.completed = r.completed;
    row.rounds = r.rounds;
    row.rounds_tilde = r.rounds_tilde;
    if (cfg.keep_results) results[trial] = std::move(r);
  });

  Summary s = summarize(label, n, rows);
  s.graph_seed = graph_seed;
  s.master_seed = cfg.master_seed;
  out.summaries.push_back(std::move(s));
  out.trials.insert(out.trials.end(), rows.begin(), rows.end());
  for (auto& r : results) out.results.push_back(std::move(r));
}

std::string format_optional_param(const char* key, double value) {
  return std::string(":") + key + "=" + format_real(value);
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorKind::invalid_spec, "trials must be at least 1");
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) throw Error(ErrorKind::invalid_spec, "q must lie in (0, 1]");
  for (std::size_t i = 1; i < cfg.n_values.size(); ++i) {
    if (cfg.n_values[i] <= cfg.n_values[i - 1]) {
      throw Error(ErrorKind::invalid_spec, "n values must be strictly increasing");
    }
  }
}

std::string family_label(const FamilySpec& spec) {
  std::string label(to_string(spec.family));
  if (spec.p) label += format_optional_param("p", *spec.p);
  if (spec.d) label += ":d=" + std::to_string(*spec.d);
  if (spec.eps) label += format_optional_param("eps", *spec.eps);
  return label;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("RUMOR_THREADS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(cap, &end, 10);
    if (end != cap && value > 0) threads = std::min<std::size_t>(threads, value);
  }
  return threads;
}

SweepResult run_trials(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.families.empty()) throw Error(ErrorKind::invalid_spec, "no graph family given");
  if (cfg.n_values.empty()) throw Error(ErrorKind::invalid_spec, "no n values given");
  SweepResult out;
  for (std::size_t fi = 0; fi < cfg.families.size(); ++fi) {
    for (std::size_t n : cfg.n_values) {
      FamilySpec spec = cfg.families[fi];
      spec.n = n;
      const std::uint64_t graph_seed = derive_seed(cfg.master_seed, {fi, n, hash_label("graph")});
      const Graph g = generate(spec, graph_seed);
      run_point(g, family_label(spec), fi, cfg, graph_seed, out);
    }
  }
  return out;
}

SweepResult run_trials_on(const Graph& g, const std::string& label, const ExperimentConfig& cfg) {
  validate(cfg);
  SweepResult out;
  run_point(g, label, 0, cfg, 0, out);
  return out;
}

double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) return 0.0;
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::string family, std::size_t n, std::span<const TrialRow> rows) {
  Summary s;
  s.family = std::move(family);
  s.n = n;
  s.trials = rows.size();
  std::vector<double> runtimes;
  double tilde_sum = 0.0;
  std::size_t tilde_count = 0;
  for (const auto& r : rows) {
    if (r.completed) runtimes.push_back(static_cast<double>(r.rounds));
    if (r.rounds_tilde) {
      tilde_sum += static_cast<double>(*r.rounds_tilde);
      ++tilde_count;
    }
  }
  s.completed = runtimes.size();
  s.completion_rate = rows.empty() ? 0.0 : static_cast<double>(s.completed) / static_cast<double>(rows.size());
  if (tilde_count > 0) s.mean_rounds_tilde = tilde_sum / static_cast<double>(tilde_count);
  if (runtimes.empty()) return s;

  std::sort(runtimes.begin(), runtimes.end());
  const double k = static_cast<double>(runtimes.size());
  s.mean_rounds = std::accumulate(runtimes.begin(), runtimes.end(), 0.0) / k;
  if (runtimes.size() > 1) {
    double ss = 0.0;
    for (double x : runtimes) ss += (x - s.mean_rounds) * (x - s.mean_rounds);
    s.sd_rounds = std::sqrt(ss / (k - 1.0));
  }
  s.q05 = quantile_sorted(runtimes, 0.05);
  s.q50 = quantile_sorted(runtimes, 0.50);
  s.q95 = quantile_sorted(runtimes, 0.95);
  return s;
}

SlopeFit fit_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw Error(ErrorKind::degenerate_input, "slope fit needs at least three points");
  }
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [n, y] : points) {
    if (!(n > 0.0)) throw Error(ErrorKind::degenerate_input, "n must be positive");
    sx += std::log(n);
    sy += y;
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [n, y] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (y - my);
  }
  if (sxx <= 1e-12 * k) {
    throw Error(ErrorKind::degenerate_input, "slope fit needs at least two distinct n");
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& [n, y] : points) {
    fit.max_residual = std::max(fit.max_residual, std::abs(y - (fit.intercept + fit.slope * std::log(n))));
  }
  return fit;
}

MeanComparison compare_means(std::span<const double> a, std::span<const double> b,
                             std::uint64_t seed, std::size_t resamples) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::empty_sample, "compare_means needs two nonempty samples");
  auto mean = [](std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  };
  const double mean_a = mean(a);
  const double mean_b = mean(b);
  const double pooled =
      (mean_a * static_cast<double>(a.size()) + mean_b * static_cast<double>(b.size())) /
      static_cast<double>(a.size() + b.size());

  std::vector<double> null_a(a.begin(), a.end());
  std::vector<double> null_b(b.begin(), b.end());
  for (double& x : null_a) x += pooled - mean_a;
  for (double& x : null_b) x += pooled - mean_b;

  MeanComparison out;
  out.difference = mean_a - mean_b;
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick_a(0, a.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_b(0, b.size() - 1);
  std::size_t extreme = 0;
  for (std::size_t r = 0; r < resamples; ++r) {
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sa += null_a[pick_a(rng)];
    for (std::size_t i = 0; i < b.size(); ++i) sb += null_b[pick_b(rng)];
    const double diff = sa / static_cast<double>(a.size()) - sb / static_cast<double>(b.size());
    // Tolerance absorbs the rounding left over from the pooled-mean shift.
    if (diff >= out.difference - 1e-12) ++extreme;
  }
  out.p_value = static_cast<double>(extreme + 1) / static_cast<double>(resamples + 1);
  return out;
}

std::optional<double> mid_phase_boundary_ratio(const TrialResult& result, std::size_t n) {
  if (n < 3) return std::nullopt;
  const double log_n = std::log(static_cast<double>(n));
  const double lo = std::sqrt(log_n);
  const double hi = static_cast<double>(n) / log_n;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < result.trace.size(); ++i) {
    const auto& now = result.trace[i];
    const auto informed = static_cast<double>(now.informed);
    if (informed < lo || informed > hi || now.boundary == 0) continue;
    sum += static_cast<double>(result.trace[i + 1].boundary) / static_cast<double>(now.boundary);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_significant(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_real(x).c_str(), nullptr);
}

void write_trials_csv(std::ostream& out, std::span<const TrialRow> rows) {
  out << "family,n,protocol,q,trial,seed,T,T_tilde,completed\n";
  for (const auto& r : rows) {
    out << r.family << ',' << r.n << ',' << to_string(r.protocol) << ',' << format_real(r.q) << ','
        << r.trial << ',' << r.seed << ',' << r.rounds << ',';
    if (r.rounds_tilde) out << *r.rounds_tilde;
    out << ',' << (r.completed ? 1 : 0) << '\n';
  }
}

nlohmann::ordered_json summary_to_json(const SweepResult& result, const nlohmann::json& meta) {
  nlohmann::ordered_json doc;
  doc["meta"] = meta;
  auto points = nlohmann::ordered_json::array();
  for (const auto& s : result.summaries) {
    nlohmann::ordered_json p;
    p["family"] = s.family;
    p["n"] = s.n;
    p["master_seed"] = s.master_seed;
    p["graph_seed"] = s.graph_seed;
    p["trials"] = s.trials;
    p["completed"] = s.completed;
    p["completion_rate"] = round_significant(s.completion_rate);
    p["mean_T"] = round_significant(s.mean_rounds);
    p["sd_T"] = round_significant(s.sd_rounds);
    p["q05_T"] = round_significant(s.q05);
    p["q50_T"] = round_significant(s.q50);
    p["q95_T"] = round_significant(s.q95);
    if (s.mean_rounds_tilde) {
      p["mean_T_tilde"] = round_significant(*s.mean_rounds_tilde);
    } else {
      p["mean_T_tilde"] = nullptr;
    }
    points.push_back(std::move(p));
  }
  doc["points"] = std::move(points);
  return doc;
}

}  // namespace rumor
