#include "srpuf/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "srpuf/error.hpp"

namespace srpuf {

std::vector<EnvPoint> ExperimentConfig::default_env_points() {
  return {EnvPoint::at(0), EnvPoint::at(20), EnvPoint::at(40), EnvPoint::at(60),
          EnvPoint::at(80)};
}

void ExperimentConfig::validate() const {
  node.validate();
  variation.validate();
  if (n_dies < 2) throw ConfigError("n_dies must be >= 2");
  if (n_dies > std::numeric_limits<std::uint32_t>::max()) throw ConfigError("n_dies too large");
  if (env_points.empty()) throw ConfigError("env_points must not be empty");
  for (const EnvPoint& env : env_points) env.validate();
  if (!(std::isfinite(noise_std) && noise_std >= 0)) throw ConfigError("noise_std must be >= 0");
  if (n_reps < 1) throw ConfigError("n_reps must be >= 1");
}

double KeyedNoise::eta(std::size_t cell_index) {
  if (noise_std_ == 0.0) return 0.0;
  Stream rng = Stream::keyed(seed_, StreamTag::kEvalNoise,
                             {die_id_, cell_index, env_index_, rep_});
  return noise_std_ * rng.normal();
}

std::vector<double> sample_sys_offsets(const ExperimentConfig& cfg) {
  std::vector<double> offsets(cfg.layout.n_bits());
  for (std::size_t pos = 0; pos < offsets.size(); ++pos) {
    Stream rng = Stream::keyed(cfg.seed, StreamTag::kSysOffset, {pos});
    offsets[pos] = cfg.variation.mu_off + cfg.variation.sigma_off * rng.normal();
  }
  return offsets;
}

DieSample sample_die(const ExperimentConfig& cfg, std::uint32_t die_id,
                     const std::vector<double>& sys_offsets) {
  DieSample die;
  die.die_id = die_id;
  Stream global = Stream::keyed(cfg.seed, StreamTag::kGlobalShift, {die_id});
  die.global_shift = sample_global_shift(cfg.variation, global);
  die.cells.resize(cfg.layout.n_bits());
  for (std::size_t i = 0; i < die.cells.size(); ++i) {
    Stream rng = Stream::keyed(cfg.seed, StreamTag::kCell, {die_id, i});
    SrffCell& cell = die.cells[i];
    cell.nd1 = sample_gate(cfg.variation, cfg.node, die.global_shift, rng);
    cell.nd2 = sample_gate(cfg.variation, cfg.node, die.global_shift, rng);
    cell.sys_offset = sys_offsets.at(i);
  }
  return die;
}

std::vector<DieSample> build_population(const ExperimentConfig& cfg, std::size_t threads) {
  cfg.validate();
  const std::vector<double> offsets = sample_sys_offsets(cfg);
  std::vector<DieSample> dies(cfg.n_dies);
  parallel_for(cfg.n_dies, threads, [&](std::size_t d) {
    dies[d] = sample_die(cfg, static_cast<std::uint32_t>(d), offsets);
  });
  return dies;
}

std::size_t CrpDataset::n_stress_responses() const noexcept {
  std::size_t n = 0;
  for (const auto& per_die : stress) {
    for (const auto& per_env : per_die) n += per_env.size();
  }
  return n;
}

void CrpDataset::validate() const {
  const std::size_t bits = config.layout.n_bits();
  if (references.size() != config.n_dies) throw DatasetError("reference count != n_dies");
  if (global_shifts.size() != config.n_dies) throw DatasetError("global shift count != n_dies");
  if (sys_offsets.size() != bits) throw DatasetError("sys_offsets length != n_bits");
  if (stress.size() != config.n_dies) throw DatasetError("stress die count != n_dies");
  for (const BitVector& r : references) {
    if (r.size() != bits) throw DatasetError("reference length != n_bits");
  }
  for (const auto& per_die : stress) {
    if (per_die.size() != config.env_points.size()) {
      throw DatasetError("stress env count != env_points");
    }
    for (const auto& per_env : per_die) {
      if (per_env.size() != config.n_reps) throw DatasetError("stress rep count != n_reps");
      for (const BitVector& r : per_env) {
        if (r.size() != bits) throw DatasetError("stress response length != n_bits");
      }
    }
  }
}

CrpDataset run_experiment(const ExperimentConfig& cfg, std::size_t threads) {
  cfg.validate();
  CrpDataset out;
  out.config = cfg;
  out.sys_offsets = sample_sys_offsets(cfg);
  out.global_shifts.resize(cfg.n_dies);
  out.references.resize(cfg.n_dies);
  out.stress.resize(cfg.n_dies);
  std::vector<std::uint64_t> marginal(cfg.n_dies, 0);

  const EnvPoint reference_env{EnvPoint::kReferenceTemperature, "ref25C"};
  parallel_for(cfg.n_dies, threads, [&](std::size_t d) {
    const auto die_id = static_cast<std::uint32_t>(d);
    const DieSample die = sample_die(cfg, die_id, out.sys_offsets);
    out.global_shifts[d] = die.global_shift;

    NoNoise golden;
    ResponseBits ref = full_response(die, cfg.layout, cfg.node, reference_env, golden);
    marginal[d] += ref.n_marginal;
    out.references[d] = std::move(ref.bits);

    auto& per_die = out.stress[d];
    per_die.resize(cfg.env_points.size());
    for (std::size_t e = 0; e < cfg.env_points.size(); ++e) {
      per_die[e].reserve(cfg.n_reps);
      for (std::size_t rep = 0; rep < cfg.n_reps; ++rep) {
        KeyedNoise noise(cfg.seed, die_id, e, rep, cfg.noise_std);
        ResponseBits r = full_response(die, cfg.layout, cfg.node, cfg.env_points[e], noise);
        marginal[d] += r.n_marginal;
        per_die[e].push_back(std::move(r.bits));
      }
    }
  });
  for (std::uint64_t m : marginal) out.marginal_evaluations += m;
  return out;
}

}  // namespace srpuf
