#include "rumor/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rumor/error.hpp"

namespace rumor {
namespace {

constexpr int kPowerIterations = 200;
constexpr double kPowerTolerance = 1e-6;

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < g.order(); ++v) {
    g.for_each_neighbor(v, [&](Vertex w) { a(v, w) = 1.0; });
  }
  return a;
}

// y = A x using the stored rows; complement rows use sum(x) - sum over row.
void multiply(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (Vertex v = 0; v < g.order(); ++v) {
    double acc = 0.0;
    for (Vertex w : g.stored_row(v)) acc += x[w];
    y[v] = g.row_is_complement(v) ? total - acc : acc;
  }
}

double norm(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

void scale(std::vector<double>& x, double s) {
  for (double& v : x) v *= s;
}

// Dominant |eigenvalue| of A + shift I restricted to the orthogonal complement
// of deflate_vec. Estimated by the norm ratio so that +-lambda pairs
// (bipartite graphs) still converge.
double power_iterate(const Graph& g, double shift, const std::vector<double>* deflate_vec,
                     std::vector<double>& x) {
  const std::size_t n = g.order();
  std::vector<double> y(n);
  auto project_out = [&](std::vector<double>& v) {
    if (deflate_vec == nullptr) return;
    const double c = std::inner_product(v.begin(), v.end(), deflate_vec->begin(), 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i] -= c * (*deflate_vec)[i];
  };
  project_out(x);
  double nx = norm(x);
  if (nx == 0.0) return 0.0;
  scale(x, 1.0 / nx);
  double estimate = 0.0;
  for (int it = 0; it < kPowerIterations; ++it) {
    multiply(g, x, y);
    for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];
    // The deflated operator acts as zero on the removed direction.
    project_out(y);
    const double ny = norm(y);
    if (ny == 0.0) return 0.0;
    const double prev = estimate;
    estimate = ny;
    x.swap(y);
    scale(x, 1.0 / ny);
    if (it > 0 && std::abs(estimate - prev) <= kPowerTolerance * std::abs(estimate)) break;
  }
  return estimate;
}

}  // namespace

const char* to_string(SpectralMethod method) noexcept {
  return method == SpectralMethod::exact_eigensolve ? "exact-eigensolve"
                                                    : "power-iteration-estimate";
}

AdjacencySpectrum adjacency_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_adjacency(g));
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  AdjacencySpectrum out;
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  out.eigenvectors.resize(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    auto col = vectors.col(k);
    out.eigenvectors[static_cast<std::size_t>(k)].assign(col.data(), col.data() + col.size());
  }
  return out;
}

SpectralProfile spectral_profile(const Graph& g, std::size_t exact_threshold) {
  SpectralProfile profile;
  profile.delta = g.min_degree();
  profile.Delta = g.max_degree();
  const std::size_t n = g.order();
  if (n <= 1) return profile;

  if (n <= exact_threshold) {
    const auto spectrum = adjacency_spectrum(g);
    const auto& ev = spectrum.eigenvalues;
    profile.mu1 = ev.back();
    profile.lambda = std::max(std::abs(ev[n - 2]), std::abs(ev.front()));
    profile.method = SpectralMethod::exact_eigensolve;
    return profile;
  }

  // mu_1 on A + Delta I, whose spectrum is nonnegative with a unique top.
  const double shift = static_cast<double>(profile.Delta);
  std::vector<double> top(n);
  for (std::size_t i = 0; i < n; ++i) top[i] = 1.0 + 1e-3 * static_cast<double>(i % 7);
  profile.mu1 = power_iterate(g, shift, nullptr, top) - shift;

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(1.0 + static_cast<double>(i));
  profile.lambda = power_iterate(g, 0.0, &top, x);
  profile.lambda = std::min(profile.lambda, static_cast<double>(profile.Delta));
  profile.method = SpectralMethod::power_iteration_estimate;
  return profile;
}

double mixing_deviation(const Graph& g, std::span<const Vertex> subset) {
  const std::size_t n = g.order();
  std::vector<std::uint8_t> in(n, 0);
  std::size_t size = 0;
  for (Vertex v : subset) {
    if (v >= n) {
      throw Error(ErrorKind::out_of_range,
                  "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
    }
    if (!in[v]) {
      in[v] = 1;
      ++size;
    }
  }
  if (size == 0 || size == n) {
    throw Error(ErrorKind::invalid_spec, "mixing deviation needs 1 <= |S| <= n-1");
  }
  const double boundary = static_cast<double>(edge_boundary(g, subset));
  const double s = static_cast<double>(size);
  const double expected =
      static_cast<double>(g.max_degree()) * s * (static_cast<double>(n) - s) / static_cast<double>(n);
  return std::abs(boundary - expected);
}

}  // namespace rumor
