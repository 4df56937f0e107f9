#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "srpuf/metrics.hpp"
#include "srpuf/montecarlo.hpp"

namespace srpuf {

inline constexpr const char* kDatasetFormat = "srpuf-crp/1";
inline constexpr const char* kReportFormat = "srpuf-report/1";

/// Config echo used in every emitted file.
nlohmann::json config_to_json(const ExperimentConfig& cfg);
/// Strict parse of a config echo; unknown or missing keys raise ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Newline-delimited JSON: a header record with the config echo and the
/// per-position skew, one record per reference response, then one record per
/// stress response. Bits are hex, position 0 = MSB of the first digit.
void write_dataset(std::ostream& out, const CrpDataset& dataset);
CrpDataset read_dataset(std::istream& in);  // throws DatasetError

void save_dataset(const std::filesystem::path& path, const CrpDataset& dataset);  // IoError
CrpDataset load_dataset(const std::filesystem::path& path);  // IoError / DatasetError

nlohmann::json report_to_json(const MetricsReport& report, const ExperimentConfig& cfg);

/// CSV tables, stable-ordered, each prefixed with '#' provenance lines.
std::string inter_hd_csv(const MetricsReport& report, const ExperimentConfig& cfg);
std::string intra_hd_csv(const MetricsReport& report, const ExperimentConfig& cfg);
std::string positions_csv(const MetricsReport& report, const ExperimentConfig& cfg);

/// report.json, inter_hd.csv, intra_hd.csv, positions.csv under `dir`.
void write_report_files(const std::filesystem::path& dir, const MetricsReport& report,
                        const ExperimentConfig& cfg);

}  // namespace srpuf
