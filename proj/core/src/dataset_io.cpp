#include "srpuf/dataset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "srpuf/error.hpp"

namespace srpuf {

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad_config(where + key, "missing");
  return *it;
}

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) bad_config(key, "expected a number");
  return v.get<double>();
}

std::uint64_t as_u64(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    bad_config(key, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) bad_config(where.empty() ? "<root>" : where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) bad_config(where + key, "unknown key");
  }
}

json env_to_json(const EnvPoint& env) {
  return {{"temperature", env.temperature}, {"label", env.label}};
}

std::string provenance_lines(const ExperimentConfig& cfg) {
  return fmt::format("# format={}\n# seed={}\n# config={}\n", kReportFormat, cfg.seed,
                     config_to_json(cfg).dump());
}

[[noreturn]] void corrupt(std::size_t line, const std::string& what) {
  throw DatasetError("dataset line " + std::to_string(line) + ": " + what);
}

}  // namespace

json config_to_json(const ExperimentConfig& cfg) {
  json envs = json::array();
  for (const EnvPoint& env : cfg.env_points) envs.push_back(env_to_json(env));
  const VariationSpec& v = cfg.variation;
  return {
      {"node",
       {{"name", std::string(to_string(cfg.node.name))},
        {"l_nom", cfg.node.l_nom},
        {"d_nom", cfg.node.d_nom},
        {"alpha", cfg.node.alpha},
        {"k_temp_nom", cfg.node.k_temp_nom},
        {"v_nom", cfg.node.v_nom}}},
      {"n_bits", cfg.layout.n_bits()},
      {"variation",
       {{"inter_frac", v.inter_frac},
        {"intra_frac", v.intra_frac},
        {"trunc_sigma", v.trunc_sigma},
        {"sigma_k", v.sigma_k},
        {"sigma_off", v.sigma_off},
        {"mu_off", v.mu_off}}},
      {"seed", cfg.seed},
      {"n_dies", cfg.n_dies},
      {"env_points", envs},
      {"noise_std", cfg.noise_std},
      {"n_reps", cfg.n_reps},
  };
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown(j, {"node", "n_bits", "variation", "seed", "n_dies", "env_points", "noise_std",
                     "n_reps"},
                 "");
  ExperimentConfig cfg;
  const json& node = require(j, "node", "");
  reject_unknown(node, {"name", "l_nom", "d_nom", "alpha", "k_temp_nom", "v_nom"}, "node.");
  const json& name = require(node, "name", "node.");
  if (!name.is_string()) bad_config("node.name", "expected a string");
  cfg.node.name = parse_node_name(name.get<std::string>());
  cfg.node.l_nom = as_double(require(node, "l_nom", "node."), "node.l_nom");
  cfg.node.d_nom = as_double(require(node, "d_nom", "node."), "node.d_nom");
  cfg.node.alpha = as_double(require(node, "alpha", "node."), "node.alpha");
  cfg.node.k_temp_nom = as_double(require(node, "k_temp_nom", "node."), "node.k_temp_nom");
  cfg.node.v_nom = as_double(require(node, "v_nom", "node."), "node.v_nom");

  cfg.layout = ArrayLayout(as_u64(require(j, "n_bits", ""), "n_bits"));

  const json& var = require(j, "variation", "");
  reject_unknown(var, {"inter_frac", "intra_frac", "trunc_sigma", "sigma_k", "sigma_off", "mu_off"},
                 "variation.");
  auto field = [&](const char* key) {
    return as_double(require(var, key, "variation."), std::string("variation.") + key);
  };
  cfg.variation = {field("inter_frac"), field("intra_frac"), field("trunc_sigma"),
                   field("sigma_k"),    field("sigma_off"),  field("mu_off")};

  cfg.seed = as_u64(require(j, "seed", ""), "seed");
  cfg.n_dies = as_u64(require(j, "n_dies", ""), "n_dies");
  const json& envs = require(j, "env_points", "");
  if (!envs.is_array()) bad_config("env_points", "expected an array");
  cfg.env_points.clear();
  for (const json& e : envs) {
    reject_unknown(e, {"temperature", "label"}, "env_points[].");
    const json& label = require(e, "label", "env_points[].");
    if (!label.is_string()) bad_config("env_points[].label", "expected a string");
    cfg.env_points.push_back(
        {as_double(require(e, "temperature", "env_points[]."), "env_points[].temperature"),
         label.get<std::string>()});
  }
  cfg.noise_std = as_double(require(j, "noise_std", ""), "noise_std");
  cfg.n_reps = as_u64(require(j, "n_reps", ""), "n_reps");
  cfg.validate();
  return cfg;
}

void write_dataset(std::ostream& out, const CrpDataset& dataset) {
  const json header = {{"record", "header"},
                       {"format", kDatasetFormat},
                       {"config", config_to_json(dataset.config)},
                       {"sys_offsets", dataset.sys_offsets},
                       {"marginal_evaluations", dataset.marginal_evaluations}};
  out << header.dump() << '\n';
  for (std::size_t d = 0; d < dataset.references.size(); ++d) {
    const json rec = {{"record", "reference"},
                      {"die", d},
                      {"global_shift", dataset.global_shifts.at(d)},
                      {"bits", dataset.references[d].to_hex()}};
    out << rec.dump() << '\n';
  }
  for (std::size_t d = 0; d < dataset.stress.size(); ++d) {
    for (std::size_t e = 0; e < dataset.stress[d].size(); ++e) {
      for (std::size_t r = 0; r < dataset.stress[d][e].size(); ++r) {
        const json rec = {{"record", "response"},
                          {"die", d},
                          {"env", e},
                          {"rep", r},
                          {"bits", dataset.stress[d][e][r].to_hex()}};
        out << rec.dump() << '\n';
      }
    }
  }
}

CrpDataset read_dataset(std::istream& in) {
  CrpDataset ds;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<bool> have_ref;
  std::vector<bool> have_stress;
  std::size_t n_envs = 0;
  std::size_t n_reps = 0;
  std::size_t n_bits = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      corrupt(line_no, std::string("invalid JSON: ") + e.what());
    }
    try {
      const std::string kind = rec.at("record").get<std::string>();
      if (kind == "header") {
        if (have_header) corrupt(line_no, "duplicate header");
        if (rec.at("format").get<std::string>() != kDatasetFormat) {
          corrupt(line_no, "unsupported format");
        }
        try {
          ds.config = config_from_json(rec.at("config"));
        } catch (const ConfigError& e) {
          corrupt(line_no, e.what());
        }
        ds.sys_offsets = rec.at("sys_offsets").get<std::vector<double>>();
        ds.marginal_evaluations = rec.at("marginal_evaluations").get<std::uint64_t>();
        n_bits = ds.config.layout.n_bits();
        n_envs = ds.config.env_points.size();
        n_reps = ds.config.n_reps;
        const std::size_t n = ds.config.n_dies;
        ds.references.assign(n, BitVector{});
        ds.global_shifts.assign(n, 0.0);
        ds.stress.assign(n, std::vector<std::vector<BitVector>>(
                                n_envs, std::vector<BitVector>(n_reps)));
        have_ref.assign(n, false);
        have_stress.assign(n * n_envs * n_reps, false);
        have_header = true;
        continue;
      }
      if (!have_header) corrupt(line_no, "record before header");
      const auto die = rec.at("die").get<std::size_t>();
      if (die >= ds.config.n_dies) corrupt(line_no, "die index out of range");
      const BitVector bits = BitVector::from_hex(rec.at("bits").get<std::string>(), n_bits);
      if (kind == "reference") {
        if (have_ref[die]) corrupt(line_no, "duplicate reference");
        have_ref[die] = true;
        ds.references[die] = bits;
        ds.global_shifts[die] = rec.at("global_shift").get<double>();
      } else if (kind == "response") {
        const auto env = rec.at("env").get<std::size_t>();
        const auto rep = rec.at("rep").get<std::size_t>();
        if (env >= n_envs || rep >= n_reps) corrupt(line_no, "env/rep index out of range");
        const std::size_t slot = (die * n_envs + env) * n_reps + rep;
        if (have_stress[slot]) corrupt(line_no, "duplicate response");
        have_stress[slot] = true;
        ds.stress[die][env][rep] = bits;
      } else {
        corrupt(line_no, "unknown record type '" + kind + "'");
      }
    } catch (const json::exception& e) {
      corrupt(line_no, e.what());
    } catch (const std::invalid_argument& e) {
      corrupt(line_no, e.what());
    }
  }
  if (!have_header) throw DatasetError("dataset has no header record");
  for (bool b : have_ref) {
    if (!b) throw DatasetError("dataset is missing reference responses");
  }
  for (bool b : have_stress) {
    if (!b) throw DatasetError("dataset is missing stress responses");
  }
  ds.validate();
  return ds;
}

void save_dataset(const std::filesystem::path& path, const CrpDataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_dataset(out, dataset);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

CrpDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_dataset(in);
}

json report_to_json(const MetricsReport& report, const ExperimentConfig& cfg) {
  json intra = json::array();
  for (const EnvReliability& env : report.intra.per_env) {
    intra.push_back({{"label", env.label},
                     {"temperature", env.temperature},
                     {"counts", env.histogram.counts},
                     {"frac_hd_zero_pct", env.frac_hd_zero_pct},
                     {"mean_ber_pct", env.mean_ber_pct}});
  }
  const CollisionResult& c = report.collision;
  return {
      {"format", kReportFormat},
      {"config", config_to_json(cfg)},
      {"seed", cfg.seed},
      {"policy",
       {{"mode", std::string(to_string(report.policy.mode))},
        {"n_sampled", report.policy.n_sampled},
        {"seed", report.policy.seed}}},
      {"n_dies", report.n_dies},
      {"n_bits", report.n_bits},
      {"mean_inter_hd_pct", report.mean_inter_hd_pct()},
      {"n_comparisons", report.n_comparisons()},
      {"inter_hd_histogram", report.inter.histogram.counts},
      {"frac_hd_zero_pct", report.frac_hd_zero_pct()},
      {"mean_ber_pct", report.mean_ber_pct()},
      {"n_stress_comparisons", report.intra.n_comparisons},
      {"intra_hd_histogram", intra},
      {"p_zero_per_position", report.p_zero_per_position},
      {"mean_p_zero", report.mean_p_zero()},
      {"bit_aliasing_per_position", report.bit_aliasing_per_position},
      {"collision",
       {{"reference_die", c.reference_index},
        {"match_per_position", c.match_per_position},
        {"mismatch_per_position", c.mismatch_per_position},
        {"match_average", c.match_average},
        {"mismatch_average", c.mismatch_average},
        {"note",
         "match: P(bit equals the reference die's bit); mismatch: 1 - match. "
         "Two estimators are reported because 'probability of collision' has no single "
         "accepted definition."}}},
  };
}

std::string inter_hd_csv(const MetricsReport& report, const ExperimentConfig& cfg) {
  std::string out = provenance_lines(cfg);
  out += fmt::format("# n_bits={}\n", report.n_bits);
  out += "hd,count\n";
  const auto& counts = report.inter.histogram.counts;
  for (std::size_t h = 0; h < counts.size(); ++h) out += fmt::format("{},{}\n", h, counts[h]);
  return out;
}

std::string intra_hd_csv(const MetricsReport& report, const ExperimentConfig& cfg) {
  std::string out = provenance_lines(cfg);
  out += "env,temperature,hd,count\n";
  for (const EnvReliability& env : report.intra.per_env) {
    const auto& counts = env.histogram.counts;
    for (std::size_t h = 0; h < counts.size(); ++h) {
      out += fmt::format("{},{},{},{}\n", env.label, env.temperature, h, counts[h]);
    }
  }
  return out;
}

std::string positions_csv(const MetricsReport& report, const ExperimentConfig& cfg) {
  std::string out = provenance_lines(cfg);
  out += "position,p_zero,bit_aliasing,collision_match,collision_mismatch\n";
  for (std::size_t l = 0; l < report.p_zero_per_position.size(); ++l) {
    out += fmt::format("{},{},{},{},{}\n", l, report.p_zero_per_position[l],
                       report.bit_aliasing_per_position[l],
                       report.collision.match_per_position[l],
                       report.collision.mismatch_per_position[l]);
  }
  return out;
}

void write_report_files(const std::filesystem::path& dir, const MetricsReport& report,
                        const ExperimentConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto write = [&](const char* name, const std::string& text) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
  };
  write("report.json", report_to_json(report, cfg).dump(2) + "\n");
  write("inter_hd.csv", inter_hd_csv(report, cfg));
  write("intra_hd.csv", intra_hd_csv(report, cfg));
  write("positions.csv", positions_csv(report, cfg));
}

}  // namespace srpuf
