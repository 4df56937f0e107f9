#pragma once

#include <cstdint>
#include <initializer_list>

namespace srpuf {

/// Purpose tags separate the random substreams of one experiment so that a
/// draw for one purpose never aliases a draw for another.
enum class StreamTag : std::uint64_t {
  kGlobalShift = 1,
  kCell = 2,
  kSysOffset = 3,
  kEvalNoise = 4,
  kPairSampling = 5,
  kCollisionRef = 6,
};

/// Stateless mixing function (SplitMix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream.
///
/// The stream is fully described by a 64-bit key and a counter; the i-th
/// output is mix64(key + (i + 1) * gamma). Keys are derived by hashing a
/// tuple of coordinates (seed, die, cell, ...), which makes every substream
/// independent of the order in which substreams are consumed. Normal
/// variates are produced with Box-Muller on top of the raw 64-bit outputs,
/// so sequences are bit-identical across standard libraries.
class Stream {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr Stream(std::uint64_t key) noexcept : key_(key) {}

  /// Derive a key from a seed and an ordered list of coordinates.
  static constexpr std::uint64_t derive(std::uint64_t seed,
                                        std::initializer_list<std::uint64_t> coords) noexcept {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t c : coords) h = mix64(h ^ (c + kGamma));
    return h;
  }

  static constexpr Stream keyed(std::uint64_t seed, StreamTag tag,
                                std::initializer_list<std::uint64_t> coords) noexcept {
    std::uint64_t h = derive(seed, {static_cast<std::uint64_t>(tag)});
    for (std::uint64_t c : coords) h = mix64(h ^ (c + kGamma));
    return Stream(h);
  }

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer on [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Standard normal variate.
  double normal() noexcept;

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace srpuf
