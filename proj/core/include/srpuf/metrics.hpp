#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srpuf/bits.hpp"

namespace srpuf {

struct CrpDataset;

/// Number of differing positions. Throws std::invalid_argument on a length
/// mismatch.
std::size_t hamming_distance(const BitVector& a, const BitVector& b);

struct ComparisonPolicy {
  enum class Mode { kAllPairs, kSampled };

  Mode mode = Mode::kAllPairs;
  std::size_t n_sampled = 2000;
  std::uint64_t seed = 1;

  static ComparisonPolicy all_pairs() { return {}; }
  static ComparisonPolicy sampled(std::size_t n, std::uint64_t seed) {
    return {Mode::kSampled, n, seed};
  }

  void validate() const;  // throws ConfigError

  friend bool operator==(const ComparisonPolicy&, const ComparisonPolicy&) = default;
};

std::string_view to_string(ComparisonPolicy::Mode mode) noexcept;

/// Absolute-HD histogram: counts[h] = number of comparisons at distance h.
struct HdHistogram {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept;
  friend bool operator==(const HdHistogram&, const HdHistogram&) = default;
};

struct UniquenessResult {
  double mean_pct = 0.0;
  HdHistogram histogram;
  std::uint64_t n_comparisons = 0;
};

/// Mean pairwise normalized inter-chip HD, in percent. Throws
/// std::invalid_argument with fewer than two responses. A sampled policy
/// draws min(n_sampled, m(m-1)/2) distinct pairs uniformly.
UniquenessResult uniqueness(std::span<const BitVector> refs, const ComparisonPolicy& policy);

struct EnvReliability {
  std::string label;
  double temperature = 0.0;
  HdHistogram histogram;
  double frac_hd_zero_pct = 0.0;
  double mean_ber_pct = 0.0;
};

struct ReliabilityResult {
  double frac_hd_zero_pct = 0.0;
  double mean_ber_pct = 0.0;
  std::uint64_t n_comparisons = 0;
  std::vector<EnvReliability> per_env;
};

/// Stress responses against their die's reference. Throws
/// std::invalid_argument when the dataset has no stress responses.
ReliabilityResult reliability(const CrpDataset& dataset);

/// Per position: fraction of responses with a 0 at that position.
std::vector<double> uniformity(std::span<const BitVector> refs);

/// Per position: fraction of responses with a 1 at that position.
std::vector<double> bit_aliasing(std::span<const BitVector> refs);

struct CollisionResult {
  std::size_t reference_index = 0;
  std::vector<double> match_per_position;     ///< P(bit equals the reference's)
  std::vector<double> mismatch_per_position;  ///< P(bit differs from the reference's)
  double match_average = 0.0;
  double mismatch_average = 0.0;
};

/// Compares one reference response, picked from `seed`, against all others.
/// Throws std::invalid_argument with fewer than two responses.
CollisionResult collision(std::span<const BitVector> refs, std::uint64_t seed);

struct MetricsReport {
  ComparisonPolicy policy;
  std::size_t n_dies = 0;
  std::size_t n_bits = 0;
  UniquenessResult inter;
  ReliabilityResult intra;
  std::vector<double> p_zero_per_position;
  std::vector<double> bit_aliasing_per_position;
  CollisionResult collision;

  double mean_inter_hd_pct() const noexcept { return inter.mean_pct; }
  double frac_hd_zero_pct() const noexcept { return intra.frac_hd_zero_pct; }
  double mean_ber_pct() const noexcept { return intra.mean_ber_pct; }
  std::uint64_t n_comparisons() const noexcept { return inter.n_comparisons; }
  double mean_p_zero() const noexcept;
};

/// All metrics of one dataset. The collision reference die is drawn from
/// policy.seed.
MetricsReport evaluate(const CrpDataset& dataset, const ComparisonPolicy& policy);

}  // namespace srpuf
