#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rumor/graph.hpp"

namespace rumor {

enum class Family { complete, star, gnp, regular, push_adversary, pp_adversary };

std::string_view to_string(Family family) noexcept;
/// Throws Error(invalid_spec) on an unknown name.
Family parse_family(std::string_view name);

/// Parameters for one graph family. Optional fields must be present exactly
/// when the family uses them: p for gnp, d for regular, eps for the two
/// adversary constructions.
struct FamilySpec {
  Family family = Family::complete;
  std::size_t n = 0;
  std::optional<double> p;
  std::optional<std::size_t> d;
  std::optional<double> eps;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Throws Error(invalid_spec) describing the first violated constraint.
void validate(const FamilySpec& spec);

/// Size of the first block {0, ..., floor(n/2)-1} in the two-block families.
constexpr std::size_t first_block_size(std::size_t n) noexcept { return n / 2; }

/// Target total degree ceil((1-eps) n) + 1 of second-block vertices in the
/// push adversary; realised degrees lie within +-1 of it.
std::size_t push_adversary_target_degree(std::size_t n, double eps);

/// Deterministic in (spec, seed). Random families are regenerated with sub-seed
/// seed ^ attempt until connected (100 attempts). Throws invalid_spec or
/// generation_failure.
Graph generate(const FamilySpec& spec, std::uint64_t seed);

/// Graph on m vertices in which every vertex has degree d, except that one
/// vertex is off by one when m*d is odd and parity_slack is set.
/// Pairing model followed by double-edge switchings that remove loops and
/// multi-edges; degrees above (m-1)/2 are built as the complement of the
/// sparse side. Throws generation_failure when d cannot be realised.
Graph near_regular(std::size_t m, std::size_t d, std::uint64_t seed, bool parity_slack);

/// G(n, p) edge sampling by geometric skipping. No connectivity check.
Graph gnp_graph(std::size_t n, double p, std::uint64_t seed);

/// Edge-deletion adversary: every vertex keeps at least
/// ceil(keep_fraction * deg(v)) incident edges. Edges are visited in a uniformly
/// shuffled order and dropped whenever both endpoints stay above quota.
/// The result may be disconnected.
Graph delete_random(const Graph& g, double keep_fraction, std::uint64_t seed);

/// ceil(keep_fraction * degree), robust to representation error in the
/// product (7.000000000000001 rounds to 7).
std::size_t retention_quota(double keep_fraction, std::size_t degree);

}  // namespace rumor
