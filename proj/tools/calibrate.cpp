// srpuf_calibrate: parameter sweeps that fix the model's calibration
// constants.
//
//   reliability  grid over (noise_std, sigma_k); scores the HD=0 fraction of
//                each key length against the target values and reports the
//                closest point.
//   uniformity   grid over (mu_off, sigma_off); reports per-node P(0) range
//                and uniqueness.
//
// Key lengths are evaluated as prefixes of one 128-bit experiment: cell,
// skew and noise substreams are keyed by cell index, so the first k bits of
// a 128-bit response are exactly the k-bit response.

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "srpuf/metrics.hpp"
#include "srpuf/montecarlo.hpp"

namespace {

using namespace srpuf;

constexpr std::size_t kLengths[] = {16, 32, 64, 128};
constexpr double kTargetHdZero[] = {92.3, 92.2, 90.7, 92.7};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

BitVector prefix(const BitVector& v, std::size_t n) {
  BitVector out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, v[i]);
  return out;
}

/// HD=0 percentage of every key length, from one 128-bit dataset.
std::vector<double> hd_zero_by_length(const CrpDataset& ds) {
  std::vector<double> out;
  for (std::size_t bits : kLengths) {
    std::uint64_t zero = 0;
    std::uint64_t total = 0;
    for (std::size_t d = 0; d < ds.n_dies(); ++d) {
      const BitVector ref = prefix(ds.references[d], bits);
      for (const auto& per_env : ds.stress[d]) {
        for (const BitVector& r : per_env) {
          zero += hamming_distance(ref, prefix(r, bits)) == 0 ? 1 : 0;
          ++total;
        }
      }
    }
    out.push_back(100.0 * static_cast<double>(zero) / static_cast<double>(total));
  }
  return out;
}

int run_reliability(const ExperimentConfig& base, const std::vector<double>& noise_grid,
                    const std::vector<double>& sigma_k_grid, const std::vector<double>& mu_grid,
                    std::size_t threads) {
  fmt::print("{:>7} {:>10} {:>8} {:>8} {:>8} {:>8} {:>8} {:>9} {:>10}\n", "mu_off", "noise_std",
             "sigma_k", "HD0@16", "HD0@32", "HD0@64", "HD0@128", "rms_err", "BER@128%");
  double best = std::numeric_limits<double>::infinity();
  double best_noise = 0;
  double best_sigma_k = 0;
  double best_mu = 0;
  for (double mu : mu_grid) {
  for (double sigma_k : sigma_k_grid) {
    for (double noise : noise_grid) {
      ExperimentConfig cfg = base;
      cfg.layout = ArrayLayout(128);
      cfg.noise_std = noise;
      cfg.variation.sigma_k = sigma_k;
      cfg.variation.mu_off = mu;
      const CrpDataset ds = run_experiment(cfg, threads);
      const auto hd0 = hd_zero_by_length(ds);
      double sq = 0;
      for (std::size_t i = 0; i < hd0.size(); ++i) {
        sq += (hd0[i] - kTargetHdZero[i]) * (hd0[i] - kTargetHdZero[i]);
      }
      const double rms = std::sqrt(sq / static_cast<double>(hd0.size()));
      const double ber = reliability(ds).mean_ber_pct;
      fmt::print(
          "{:>7.3f} {:>10.4f} {:>8.4f} {:>8.2f} {:>8.2f} {:>8.2f} {:>8.2f} {:>9.3f} {:>10.5f}\n",
          mu, noise, sigma_k, hd0[0], hd0[1], hd0[2], hd0[3], rms, ber);
      if (rms < best) {
        best = rms;
        best_noise = noise;
        best_sigma_k = sigma_k;
        best_mu = mu;
      }
    }
  }
  }
  fmt::print("best: mu_off={} noise_std={} sigma_k={} rms_err={:.3f}\n", best_mu, best_noise,
             best_sigma_k, best);
  return 0;
}

int run_uniformity(const ExperimentConfig& base, const std::vector<double>& mu_grid,
                   const std::vector<double>& sigma_grid, std::size_t threads) {
  fmt::print("{:>7} {:>9} {:>5} {:>8} {:>8} {:>8} {:>11}\n", "mu_off", "sigma_off", "node",
             "minP0", "meanP0", "maxP0", "uniqueness");
  for (double mu : mu_grid) {
    for (double sigma : sigma_grid) {
      for (NodeName name : {NodeName::N90, NodeName::N45, NodeName::N32}) {
        ExperimentConfig cfg = base;
        cfg.node = ProcessNode::preset(name);
        cfg.layout = ArrayLayout(128);
        cfg.variation.mu_off = mu;
        cfg.variation.sigma_off = sigma;
        cfg.n_reps = 1;
        cfg.env_points = {EnvPoint::at(25)};
        cfg.noise_std = 0;
        const CrpDataset ds = run_experiment(cfg, threads);
        const auto p0 = uniformity(ds.references);
        double lo = 1, hi = 0, mean = 0;
        for (double p : p0) {
          lo = std::min(lo, p);
          hi = std::max(hi, p);
          mean += p / static_cast<double>(p0.size());
        }
        const double uniq = uniqueness(ds.references, ComparisonPolicy::all_pairs()).mean_pct;
        fmt::print("{:>7.3f} {:>9.3f} {:>5} {:>8.3f} {:>8.3f} {:>8.3f} {:>10.2f}%\n", mu, sigma,
                   to_string(name), lo, mean, hi, uniq);
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calibration sweeps for the SR-FF PUF model"};
  app.require_subcommand(1);

  std::string node = "N90";
  std::size_t dies = 1000;
  std::size_t threads = 1;
  std::uint64_t seed = ExperimentConfig{}.seed;
  std::string noise = "0.002,0.004,0.006,0.008,0.010,0.015,0.020";
  std::string sigma_k = "0,0.01,0.02,0.05";
  std::string mu = "0.25,0.5,0.75,1.0";
  std::string sigma_off = "0.1,0.2,0.4,1.5";
  std::string rel_mu;

  for (auto* cmd : {app.add_subcommand("reliability", "Sweep noise_std x sigma_k"),
                    app.add_subcommand("uniformity", "Sweep mu_off x sigma_off")}) {
    cmd->add_option("--node", node, "Process node (reliability)");
    cmd->add_option("--dies", dies, "Population size");
    cmd->add_option("--threads", threads, "Worker threads");
    cmd->add_option("--seed", seed, "Experiment seed");
  }
  auto* rel = app.get_subcommand("reliability");
  rel->add_option("--noise", noise, "Comma-separated noise_std grid (ps)");
  rel->add_option("--sigma-k", sigma_k, "Comma-separated sigma_k grid");
  rel->add_option("--mu-off", rel_mu, "Comma-separated mu_off grid (ps); default: current");
  auto* uni = app.get_subcommand("uniformity");
  uni->add_option("--mu-off", mu, "Comma-separated mu_off grid (ps)");
  uni->add_option("--sigma-off", sigma_off, "Comma-separated sigma_off grid (ps)");
  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig base;
    base.node = ProcessNode::preset(parse_node_name(node));
    base.n_dies = dies;
    base.seed = seed;
    if (rel->parsed()) {
      const std::vector<double> mu_grid =
          rel_mu.empty() ? std::vector<double>{base.variation.mu_off} : parse_list(rel_mu);
      return run_reliability(base, parse_list(noise), parse_list(sigma_k), mu_grid, threads);
    }
    return run_uniformity(base, parse_list(mu), parse_list(sigma_off), threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
