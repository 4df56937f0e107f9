#include "srpuf/metrics.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "srpuf/error.hpp"
#include "srpuf/montecarlo.hpp"
#include "srpuf/rng.hpp"

namespace srpuf {

namespace {

double pct(std::uint64_t numerator, std::uint64_t denominator) {
  return denominator == 0 ? 0.0
                          : 100.0 * static_cast<double>(numerator) /
                                static_cast<double>(denominator);
}

void check_same_length(std::span<const BitVector> refs) {
  for (const BitVector& r : refs) {
    if (r.size() != refs.front().size()) throw std::invalid_argument("response length mismatch");
  }
}

/// Accumulates absolute HDs into a histogram plus their exact sum.
struct HdAccumulator {
  explicit HdAccumulator(std::size_t n_bits) : n_bits(n_bits) { hist.counts.assign(n_bits + 1, 0); }

  void add(std::size_t hd) {
    ++hist.counts[hd];
    sum += hd;
    ++n;
  }
  double mean_pct() const { return pct(sum, n * n_bits); }
  double zero_pct() const { return pct(hist.counts.empty() ? 0 : hist.counts[0], n); }

  std::size_t n_bits;
  HdHistogram hist;
  std::uint64_t sum = 0;
  std::uint64_t n = 0;
};

}  // namespace

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    d += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return d;
}

void ComparisonPolicy::validate() const {
  if (mode == Mode::kSampled && n_sampled < 1) throw ConfigError("n_sampled must be >= 1");
}

std::string_view to_string(ComparisonPolicy::Mode mode) noexcept {
  return mode == ComparisonPolicy::Mode::kAllPairs ? "all_pairs" : "sampled";
}

std::uint64_t HdHistogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

UniquenessResult uniqueness(std::span<const BitVector> refs, const ComparisonPolicy& policy) {
  policy.validate();
  const std::size_t m = refs.size();
  if (m < 2) throw std::invalid_argument("uniqueness needs at least two responses");
  check_same_length(refs);

  HdAccumulator acc(refs.front().size());
  const std::uint64_t total_pairs = static_cast<std::uint64_t>(m) * (m - 1) / 2;
  if (policy.mode == ComparisonPolicy::Mode::kAllPairs || policy.n_sampled >= total_pairs) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) acc.add(hamming_distance(refs[i], refs[j]));
    }
  } else {
    Stream rng = Stream::keyed(policy.seed, StreamTag::kPairSampling, {m});
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(policy.n_sampled * 2);
    while (seen.size() < policy.n_sampled) {
      std::uint64_t i = rng.below(m);
      std::uint64_t j = rng.below(m);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      if (!seen.insert(i * m + j).second) continue;
      acc.add(hamming_distance(refs[i], refs[j]));
    }
  }
  return {acc.mean_pct(), std::move(acc.hist), acc.n};
}

ReliabilityResult reliability(const CrpDataset& dataset) {
  if (dataset.n_stress_responses() == 0) {
    throw std::invalid_argument("reliability needs stress responses");
  }
  const std::size_t n_bits = dataset.n_bits();
  const auto& envs = dataset.config.env_points;
  HdAccumulator overall(n_bits);
  ReliabilityResult out;
  for (std::size_t e = 0; e < envs.size(); ++e) {
    HdAccumulator acc(n_bits);
    for (std::size_t d = 0; d < dataset.stress.size(); ++d) {
      if (e >= dataset.stress[d].size()) continue;
      for (const BitVector& r : dataset.stress[d][e]) {
        const std::size_t hd = hamming_distance(dataset.references[d], r);
        acc.add(hd);
        overall.add(hd);
      }
    }
    out.per_env.push_back({envs[e].label, envs[e].temperature, acc.hist, acc.zero_pct(),
                           acc.mean_pct()});
  }
  out.frac_hd_zero_pct = overall.zero_pct();
  out.mean_ber_pct = overall.mean_pct();
  out.n_comparisons = overall.n;
  return out;
}

std::vector<double> uniformity(std::span<const BitVector> refs) {
  if (refs.empty()) return {};
  check_same_length(refs);
  std::vector<std::uint64_t> zeros(refs.front().size(), 0);
  for (const BitVector& r : refs) {
    for (std::size_t l = 0; l < zeros.size(); ++l) zeros[l] += r[l] ? 0 : 1;
  }
  std::vector<double> out(zeros.size());
  for (std::size_t l = 0; l < zeros.size(); ++l) {
    out[l] = static_cast<double>(zeros[l]) / static_cast<double>(refs.size());
  }
  return out;
}

std::vector<double> bit_aliasing(std::span<const BitVector> refs) {
  if (refs.empty()) return {};
  check_same_length(refs);
  std::vector<std::uint64_t> ones(refs.front().size(), 0);
  for (const BitVector& r : refs) {
    for (std::size_t l = 0; l < ones.size(); ++l) ones[l] += r[l] ? 1 : 0;
  }
  std::vector<double> out(ones.size());
  for (std::size_t l = 0; l < ones.size(); ++l) {
    out[l] = static_cast<double>(ones[l]) / static_cast<double>(refs.size());
  }
  return out;
}

CollisionResult collision(std::span<const BitVector> refs, std::uint64_t seed) {
  const std::size_t m = refs.size();
  if (m < 2) throw std::invalid_argument("collision needs at least two responses");
  check_same_length(refs);
  const std::size_t n_bits = refs.front().size();

  CollisionResult out;
  Stream rng = Stream::keyed(seed, StreamTag::kCollisionRef, {m});
  out.reference_index = static_cast<std::size_t>(rng.below(m));
  const BitVector& ref = refs[out.reference_index];

  std::vector<std::uint64_t> matches(n_bits, 0);
  for (std::size_t d = 0; d < m; ++d) {
    if (d == out.reference_index) continue;
    for (std::size_t l = 0; l < n_bits; ++l) matches[l] += refs[d][l] == ref[l] ? 1 : 0;
  }
  const auto others = static_cast<double>(m - 1);
  std::uint64_t match_total = 0;
  out.match_per_position.resize(n_bits);
  out.mismatch_per_position.resize(n_bits);
  for (std::size_t l = 0; l < n_bits; ++l) {
    out.match_per_position[l] = static_cast<double>(matches[l]) / others;
    out.mismatch_per_position[l] = static_cast<double>(m - 1 - matches[l]) / others;
    match_total += matches[l];
  }
  const double denom = others * static_cast<double>(n_bits);
  out.match_average = n_bits == 0 ? 0.0 : static_cast<double>(match_total) / denom;
  out.mismatch_average =
      n_bits == 0 ? 0.0
                  : static_cast<double>((m - 1) * n_bits - match_total) / denom;
  return out;
}

double MetricsReport::mean_p_zero() const noexcept {
  if (p_zero_per_position.empty()) return 0.0;
  return std::accumulate(p_zero_per_position.begin(), p_zero_per_position.end(), 0.0) /
         static_cast<double>(p_zero_per_position.size());
}

MetricsReport evaluate(const CrpDataset& dataset, const ComparisonPolicy& policy) {
  MetricsReport report;
  report.policy = policy;
  report.n_dies = dataset.n_dies();
  report.n_bits = dataset.n_bits();
  report.inter = uniqueness(dataset.references, policy);
  report.intra = reliability(dataset);
  report.p_zero_per_position = uniformity(dataset.references);
  report.bit_aliasing_per_position = bit_aliasing(dataset.references);
  report.collision = collision(dataset.references, policy.seed);
  return report;
}

}  // namespace srpuf
