#include "cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "srpuf/dataset_io.hpp"
#include "srpuf/error.hpp"
#include "srpuf/run_config.hpp"

namespace srpuf::cli {

namespace {

constexpr const char* kDatasetFile = "dataset.ndjson";

/// Maps the exception hierarchy onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    fmt::print(err, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const IoError& e) {
    fmt::print(err, "I/O error: {}\n", e.what());
    return kIoError;
  } catch (const DatasetError& e) {
    fmt::print(err, "corrupt dataset: {}\n", e.what());
    return kCorruptDataset;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kRuntimeError;
  }
}

ComparisonPolicy apply_policy_flags(ComparisonPolicy policy, const CommonOptions& opts) {
  if (opts.pairs) {
    if (*opts.pairs == "all") {
      policy.mode = ComparisonPolicy::Mode::kAllPairs;
    } else if (*opts.pairs == "sampled") {
      policy.mode = ComparisonPolicy::Mode::kSampled;
    } else {
      throw ConfigError("--pairs must be 'all' or 'sampled'");
    }
  }
  if (opts.sampled_n) policy.n_sampled = *opts.sampled_n;
  policy.validate();
  return policy;
}

RunConfig load_with_overrides(const CommonOptions& opts) {
  RunConfig rc = load_run_config(opts.config);
  if (opts.seed) rc.experiment.seed = *opts.seed;
  if (opts.out) rc.output_dir = *opts.out;
  rc.comparison = apply_policy_flags(rc.comparison, opts);
  return rc;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void print_summary(std::ostream& out, const CrpDataset& ds, const std::filesystem::path& path) {
  std::string temps;
  for (const EnvPoint& env : ds.config.env_points) {
    temps += (temps.empty() ? "" : ",") + fmt::format("{}", env.temperature);
  }
  fmt::print(out,
             "wrote {}\n  node={} bits={} dies={} env_points=[{}] reps={} seed={} "
             "responses={}\n",
             path.string(), to_string(ds.config.node.name), ds.n_bits(), ds.n_dies(), temps,
             ds.config.n_reps, ds.config.seed, ds.n_stress_responses() + ds.n_dies());
}

}  // namespace

std::size_t resolve_threads(std::optional<std::size_t> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("PUF_SIM_THREADS")) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return n;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

int cmd_generate(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig rc = load_with_overrides(opts);
    const CrpDataset ds = run_experiment(rc.experiment, opts.threads);
    ensure_dir(rc.output_dir);
    const auto path = rc.output_dir / kDatasetFile;
    save_dataset(path, ds);
    print_summary(out, ds, path);
    return kOk;
  });
}

int cmd_evaluate(const std::filesystem::path& dataset, const CommonOptions& opts,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CrpDataset ds = load_dataset(dataset);
    ComparisonPolicy policy;
    policy.seed = ds.config.seed;
    if (opts.seed) policy.seed = *opts.seed;
    policy = apply_policy_flags(policy, opts);
    const MetricsReport report = evaluate(ds, policy);
    const auto dir = opts.out.value_or(dataset.parent_path().empty() ? std::filesystem::path(".")
                                                                     : dataset.parent_path());
    write_report_files(dir, report, ds.config);
    fmt::print(out,
               "{} {}-bit, {} dies: uniqueness {:.2f}% ({} comparisons), HD=0 {:.2f}%, "
               "BER {:.4f}%, mean P(0) {:.3f}\n  reports in {}\n",
               to_string(ds.config.node.name), report.n_bits, report.n_dies,
               report.mean_inter_hd_pct(), report.n_comparisons(), report.frac_hd_zero_pct(),
               report.mean_ber_pct(), report.mean_p_zero(), dir.string());
    return kOk;
  });
}

int cmd_sweep(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  if (const int code = guarded(err, [&] {
        rc = load_with_overrides(opts);
        ensure_dir(rc.output_dir);
        return kOk;
      });
      code != kOk) {
    return code;
  }

  std::string summary = "node,bits,uniqueness,frac_hd_zero,ber,mean_p_zero,status\n";
  int failures = 0;
  fmt::print(out, "{:<5} {:>5} {:>11} {:>13} {:>9}\n", "node", "bits", "uniqueness",
             "frac_hd_zero", "ber");
  for (NodeName node : rc.sweep.nodes) {
    for (std::size_t bits : rc.sweep.lengths) {
      const std::string cell = fmt::format("{}_{}", to_string(node), bits);
      MetricsReport report;
      const int code = guarded(err, [&] {
        const ExperimentConfig cfg = rc.experiment_for(node, bits);
        const CrpDataset ds = run_experiment(cfg, opts.threads);
        const auto dir = rc.output_dir / cell;
        ensure_dir(dir);
        save_dataset(dir / kDatasetFile, ds);
        report = evaluate(ds, rc.comparison);
        write_report_files(dir, report, cfg);
        return kOk;
      });
      if (code != kOk) {
        ++failures;
        fmt::print(err, "sweep cell {} failed (exit {})\n", cell, code);
        summary += fmt::format("{},{},,,,,failed\n", to_string(node), bits);
        continue;
      }
      fmt::print(out, "{:<5} {:>5} {:>10.2f}% {:>12.2f}% {:>8.4f}%\n", to_string(node), bits,
                 report.mean_inter_hd_pct(), report.frac_hd_zero_pct(), report.mean_ber_pct());
      summary += fmt::format("{},{},{},{},{},{},ok\n", to_string(node), bits,
                             report.mean_inter_hd_pct(), report.frac_hd_zero_pct(),
                             report.mean_ber_pct(), report.mean_p_zero());
    }
  }
  const int code = guarded(err, [&] {
    const auto path = rc.output_dir / "summary.csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << "# seed=" << rc.experiment.seed << "\n# config="
      << config_to_json(rc.experiment).dump() << "\n"
      << summary;
    if (!f) throw IoError("write failed: " + path.string());
    fmt::print(out, "summary in {}\n", path.string());
    return kOk;
  });
  if (code != kOk) return code;
  return failures == 0 ? kOk : kRuntimeError;
}

}  // namespace srpuf::cli
