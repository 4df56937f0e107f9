// srpuf: SR flip-flop PUF simulator front end.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"SR flip-flop race-condition PUF simulator"};
  app.require_subcommand(1);

  srpuf::cli::CommonOptions opts;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string pairs;
  std::size_t sampled_n = 0;
  std::size_t threads = 0;
  std::string dataset;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "Output directory");
    cmd->add_option("--seed", seed, "Seed override (evaluate: pair-sampling seed)");
    cmd->add_option("--pairs", pairs, "Comparison policy")->check(CLI::IsMember({"all", "sampled"}));
    cmd->add_option("--sampled-n", sampled_n, "Pairs drawn by the sampled policy")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", threads, "Worker threads (fallback: PUF_SIM_THREADS)");
  };

  auto* generate = app.add_subcommand("generate", "Run one experiment and write its CRP dataset");
  generate->add_option("--config", opts.config, "Run configuration (JSON)")->required();
  add_common(generate);

  auto* evaluate = app.add_subcommand("evaluate", "Compute PUF metrics of a dataset");
  evaluate->add_option("dataset,--dataset", dataset, "Dataset file (.ndjson)")->required();
  add_common(evaluate);

  auto* sweep = app.add_subcommand("sweep", "Run every node x key-length combination");
  sweep->add_option("--config", opts.config, "Run configuration (JSON)")->required();
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : srpuf::cli::kConfigError;
  }

  auto given = [](CLI::App* cmd, const char* name) { return cmd->count(name) > 0; };
  CLI::App* cmd = app.get_subcommands().front();
  if (given(cmd, "--out")) opts.out = out_dir;
  if (given(cmd, "--seed")) opts.seed = seed;
  if (given(cmd, "--pairs")) opts.pairs = pairs;
  if (given(cmd, "--sampled-n")) opts.sampled_n = sampled_n;
  opts.threads = srpuf::cli::resolve_threads(
      given(cmd, "--threads") ? std::optional<std::size_t>(threads) : std::nullopt);

  if (cmd == generate) return srpuf::cli::cmd_generate(opts, std::cout, std::cerr);
  if (cmd == evaluate) return srpuf::cli::cmd_evaluate(dataset, opts, std::cout, std::cerr);
  return srpuf::cli::cmd_sweep(opts, std::cout, std::cerr);
}
