#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "srpuf/array.hpp"
#include "srpuf/bits.hpp"
#include "srpuf/variation.hpp"

namespace srpuf {

/// One virtual die.
struct DieSample {
  std::uint32_t die_id = 0;
  double global_shift = 0.0;
  std::vector<SrffCell> cells;

  friend bool operator==(const DieSample&, const DieSample&) = default;
};

struct ExperimentConfig {
  ProcessNode node = ProcessNode::preset(NodeName::N90);
  ArrayLayout layout{128};
  VariationSpec variation{};
  std::uint64_t seed = 20190101;
  std::size_t n_dies = 1000;
  std::vector<EnvPoint> env_points = default_env_points();
  double noise_std = 0.003;  ///< ps, evaluation noise eta
  std::size_t n_reps = 10;

  static std::vector<EnvPoint> default_env_points();

  void validate() const;  // throws ConfigError

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Evaluation noise keyed by (seed, die, env, rep) and the cell index, so a
/// cell sees the same eta regardless of which other cells are evaluated.
class KeyedNoise final : public NoiseSource {
 public:
  KeyedNoise(std::uint64_t seed, std::uint32_t die_id, std::size_t env_index, std::size_t rep,
             double noise_std) noexcept
      : seed_(seed), die_id_(die_id), env_index_(env_index), rep_(rep), noise_std_(noise_std) {}

  double eta(std::size_t cell_index) override;

 private:
  std::uint64_t seed_;
  std::uint32_t die_id_;
  std::size_t env_index_;
  std::size_t rep_;
  double noise_std_;
};

/// Position-determined systematic skew, shared by every die.
std::vector<double> sample_sys_offsets(const ExperimentConfig& cfg);

/// Draw die `die_id` of the population. Depends only on (cfg, die_id).
DieSample sample_die(const ExperimentConfig& cfg, std::uint32_t die_id,
                     const std::vector<double>& sys_offsets);

/// n_dies dies, each from its own substream. `threads` only affects speed.
std::vector<DieSample> build_population(const ExperimentConfig& cfg, std::size_t threads = 1);

/// Responses of an experiment. stress[die][env][rep] follows the order of
/// cfg.env_points.
struct CrpDataset {
  ExperimentConfig config;
  std::vector<double> sys_offsets;
  std::vector<double> global_shifts;
  std::vector<BitVector> references;
  std::vector<std::vector<std::vector<BitVector>>> stress;
  std::uint64_t marginal_evaluations = 0;  ///< exact ties resolved to 0

  std::size_t n_dies() const noexcept { return references.size(); }
  std::size_t n_bits() const noexcept {
    return references.empty() ? 0 : references.front().size();
  }
  std::size_t n_stress_responses() const noexcept;

  void validate() const;  // throws DatasetError

  friend bool operator==(const CrpDataset&, const CrpDataset&) = default;
};

/// Reference responses at 25 C with eta = 0, then n_reps noisy evaluations
/// at every env point.
CrpDataset run_experiment(const ExperimentConfig& cfg, std::size_t threads = 1);

/// Run fn(i) for i in [0, n) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn);

}  // namespace srpuf

#include "srpuf/detail/parallel.hpp"
