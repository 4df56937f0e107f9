#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "srpuf/metrics.hpp"
#include "srpuf/montecarlo.hpp"

namespace srpuf {

/// Matrix of runs for the sweep command.
struct SweepSpec {
  std::vector<NodeName> nodes{NodeName::N90, NodeName::N45, NodeName::N32};
  std::vector<std::size_t> lengths{16, 32, 64, 128};
};

/// Contents of a run configuration file.
///
/// Keys (all optional; unknown keys are rejected):
///   node, node_overrides{l_nom,d_nom,alpha,k_temp_nom,v_nom}, n_bits,
///   variation{inter_frac,intra_frac,trunc_sigma,sigma_k,sigma_off,mu_off},
///   seed, n_dies, env_points[], noise_std, n_reps, output_dir,
///   comparison{mode,n_sampled,seed}, sweep{nodes[],lengths[]}
struct RunConfig {
  ExperimentConfig experiment;
  nlohmann::json node_overrides = nlohmann::json::object();
  std::filesystem::path output_dir = "out";
  ComparisonPolicy comparison;
  SweepSpec sweep;

  /// Experiment for another node/length, keeping overrides and all else.
  ExperimentConfig experiment_for(NodeName node, std::size_t n_bits) const;
};

RunConfig parse_run_config(const nlohmann::json& j);  // throws ConfigError
RunConfig load_run_config(const std::filesystem::path& path);  // IoError / ConfigError

}  // namespace srpuf
