#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "srpuf/metrics.hpp"

namespace srpuf::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kIoError = 2,
  kCorruptDataset = 3,
  kRuntimeError = 4,
};

/// Flags shared by all subcommands; unset optionals defer to the config.
struct CommonOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> pairs;  ///< "all" or "sampled"
  std::optional<std::size_t> sampled_n;
  std::size_t threads = 1;
};

/// --threads, else PUF_SIM_THREADS, else hardware concurrency.
std::size_t resolve_threads(std::optional<std::size_t> flag);

int cmd_generate(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_evaluate(const std::filesystem::path& dataset, const CommonOptions& opts,
                 std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace srpuf::cli
