#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rumor/graph.hpp"

namespace rumor {

enum class SpectralMethod { exact_eigensolve, power_iteration_estimate };

const char* to_string(SpectralMethod method) noexcept;

/// (n, delta, Delta, lambda) parameters with lambda = max(|mu_2|, |mu_n|).
struct SpectralProfile {
  std::size_t delta = 0;
  std::size_t Delta = 0;
  double lambda = 0.0;
  double mu1 = 0.0;
  SpectralMethod method = SpectralMethod::exact_eigensolve;
};

/// Dense symmetric eigendecomposition of the adjacency matrix.
/// Eigenvalues ascending; eigenvectors[k] pairs with eigenvalues[k].
struct AdjacencySpectrum {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
};

inline constexpr std::size_t kExactSpectrumThreshold = 4096;

AdjacencySpectrum adjacency_spectrum(const Graph& g);

/// Exact for n <= exact_threshold, otherwise power iteration (200 steps,
/// relative tolerance 1e-6) for mu_1 and for lambda on the deflated operator.
SpectralProfile spectral_profile(const Graph& g,
                                 std::size_t exact_threshold = kExactSpectrumThreshold);

/// |e(S, V\S) - Delta |S| (n - |S|) / n|. Requires 1 <= |S| <= n-1.
double mixing_deviation(const Graph& g, std::span<const Vertex> subset);

}  // namespace rumor
