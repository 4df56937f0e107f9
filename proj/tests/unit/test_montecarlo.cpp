#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "srpuf/error.hpp"
#include "srpuf/metrics.hpp"
#include "srpuf/montecarlo.hpp"

namespace srpuf {
namespace {

ExperimentConfig config(std::size_t bits, std::size_t dies) {
  ExperimentConfig cfg;
  cfg.layout = ArrayLayout(bits);
  cfg.n_dies = dies;
  cfg.seed = 99;
  return cfg;
}

TEST(ExperimentConfig, Validation) {
  ExperimentConfig cfg = config(16, 2);
  EXPECT_NO_THROW(cfg.validate());
  cfg.n_dies = 1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config(16, 2);
  cfg.env_points.clear();
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config(16, 2);
  cfg.noise_std = -0.1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = config(16, 2);
  cfg.env_points.push_back(EnvPoint::at(200));
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(BuildPopulation, ShapeOfFullPopulation) {
  const auto dies = build_population(config(128, 1000), 4);
  ASSERT_EQ(dies.size(), 1000U);
  std::set<std::uint32_t> ids;
  for (const DieSample& d : dies) {
    EXPECT_EQ(d.cells.size(), 128U);
    ids.insert(d.die_id);
  }
  EXPECT_EQ(ids.size(), 1000U);
}

TEST(BuildPopulation, DeterministicAndThreadIndependent) {
  const ExperimentConfig cfg = config(64, 60);
  const auto a = build_population(cfg, 1);
  EXPECT_EQ(a, build_population(cfg, 1));
  EXPECT_EQ(a, build_population(cfg, 3));
  ExperimentConfig other = cfg;
  other.seed = 100;
  EXPECT_NE(a, build_population(other, 1));
}

TEST(BuildPopulation, ZeroInterVariationMeansZeroShift) {
  ExperimentConfig cfg = config(16, 50);
  cfg.variation.inter_frac = 0;
  for (const DieSample& d : build_population(cfg)) EXPECT_EQ(d.global_shift, 0.0);
}

TEST(BuildPopulation, CellsRespectEnvelopeAndShareOffsets) {
  const ExperimentConfig cfg = config(32, 200);
  const auto offsets = sample_sys_offsets(cfg);
  for (const DieSample& d : build_population(cfg, 2)) {
    ASSERT_LE(std::abs(d.global_shift), cfg.variation.inter_frac);
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
      const SrffCell& c = d.cells[i];
      for (const GateParams& g : {c.nd1, c.nd2}) {
        ASSERT_LE(std::abs(g.length_factor - 1 - d.global_shift),
                  cfg.variation.intra_frac + 1e-12);
        ASSERT_GT(g.k_temp, 0.0);
      }
      ASSERT_EQ(c.sys_offset, offsets[i]);
    }
  }
}

TEST(BuildPopulation, ShorterKeysArePrefixesOfLongerOnes) {
  const auto long_dies = build_population(config(128, 10));
  const auto short_dies = build_population(config(32, 10));
  for (std::size_t d = 0; d < 10; ++d) {
    for (std::size_t i = 0; i < 32; ++i) {
      ASSERT_EQ(short_dies[d].cells[i], long_dies[d].cells[i]);
    }
  }
}

TEST(RunExperiment, NoNoiseAtReferenceReproducesReference) {
  ExperimentConfig cfg = config(32, 20);
  cfg.noise_std = 0;
  cfg.env_points = {EnvPoint::at(25)};
  cfg.n_reps = 3;
  const CrpDataset ds = run_experiment(cfg);
  for (std::size_t d = 0; d < ds.n_dies(); ++d) {
    for (const BitVector& r : ds.stress[d][0]) EXPECT_EQ(r, ds.references[d]);
  }
}

TEST(RunExperiment, DatasetShape) {
  ExperimentConfig cfg = config(16, 7);
  cfg.n_reps = 4;
  const CrpDataset ds = run_experiment(cfg);
  EXPECT_NO_THROW(ds.validate());
  EXPECT_EQ(ds.n_dies(), 7U);
  EXPECT_EQ(ds.n_bits(), 16U);
  EXPECT_EQ(ds.n_stress_responses(), 7U * 5U * 4U);
  EXPECT_EQ(ds.n_stress_responses() + ds.n_dies(), 147U);
}

TEST(RunExperiment, IdenticalAcrossThreadCounts) {
  const ExperimentConfig cfg = config(64, 40);
  const CrpDataset one = run_experiment(cfg, 1);
  EXPECT_EQ(one, run_experiment(cfg, 4));
  EXPECT_EQ(one, run_experiment(cfg, 8));
}

TEST(RunExperiment, RepsDrawFreshNoise) {
  ExperimentConfig cfg = config(128, 30);
  cfg.noise_std = 2.0;  // large enough that some bits must differ between reps
  cfg.n_reps = 2;
  const CrpDataset ds = run_experiment(cfg);
  bool differ = false;
  for (std::size_t d = 0; d < ds.n_dies(); ++d) differ |= ds.stress[d][0][0] != ds.stress[d][0][1];
  EXPECT_TRUE(differ);
}

TEST(RunExperiment, HotterIsLessStable) {
  // Full default population: flip rate at 80 C exceeds the one at 40 C.
  ExperimentConfig cfg;
  cfg.env_points = {EnvPoint::at(40), EnvPoint::at(80)};
  const ReliabilityResult rel = reliability(run_experiment(cfg, 4));
  ASSERT_EQ(rel.per_env.size(), 2U);
  EXPECT_GE(rel.per_env[1].mean_ber_pct, rel.per_env[0].mean_ber_pct);
  EXPECT_GT(rel.per_env[1].mean_ber_pct, 0.0);
}

TEST(RunExperiment, DefaultFlipRateInCalibratedBand) {
  const CrpDataset ds = run_experiment(ExperimentConfig{}, 4);
  const double ber = reliability(ds).mean_ber_pct;
  EXPECT_GE(ber, 0.02);
  EXPECT_LE(ber, 0.15);
}

TEST(GlobalShift, NeverFlipsABitAgainstAZeroShiftClone) {
  // Same seed with inter_frac = 0 yields the same local draws and a zero
  // global shift. With a shared temperature coefficient, no skew and
  // eta = 0, the global factor scales both gates alike and cannot reorder
  // their delays.
  ExperimentConfig cfg = config(128, 300);
  cfg.variation.mu_off = 0;
  cfg.variation.sigma_off = 0;
  cfg.variation.sigma_k = 0;
  ExperimentConfig flat = cfg;
  flat.variation.inter_frac = 0;
  const auto dies = build_population(cfg);
  const auto clones = build_population(flat);
  std::size_t shifted = 0;
  for (std::size_t d = 0; d < dies.size(); ++d) {
    shifted += dies[d].global_shift != 0.0 ? 1 : 0;
    EXPECT_EQ(clones[d].global_shift, 0.0);
    for (double t : {0.0, 25.0, 80.0, 125.0}) {
      NoNoise a;
      NoNoise b;
      const EnvPoint env = EnvPoint::at(t);
      ASSERT_EQ(full_response(dies[d], cfg.layout, cfg.node, env, a).bits,
                full_response(clones[d], cfg.layout, cfg.node, env, b).bits);
    }
  }
  EXPECT_EQ(shifted, dies.size());
}

TEST(KeyedNoise, DependsOnlyOnItsCoordinates) {
  KeyedNoise a(1, 2, 3, 4, 0.5);
  KeyedNoise b(1, 2, 3, 4, 0.5);
  EXPECT_EQ(a.eta(7), b.eta(7));
  EXPECT_EQ(a.eta(7), a.eta(7));
  EXPECT_NE(a.eta(7), a.eta(8));
  KeyedNoise c(1, 2, 3, 5, 0.5);
  EXPECT_NE(a.eta(7), c.eta(7));
  EXPECT_EQ(KeyedNoise(1, 2, 3, 4, 0.0).eta(7), 0.0);
}

}  // namespace
}  // namespace srpuf
