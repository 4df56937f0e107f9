#include "srpuf/run_config.hpp"

#include <fstream>
#include <string>

#include "srpuf/error.hpp"

namespace srpuf {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& prefix) {
  if (!obj.is_object()) bad(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) bad(prefix + key, "unknown key");
  }
}

double get_double(const json& v, const std::string& key) {
  if (!v.is_number()) bad(key, "expected a number");
  return v.get<double>();
}

std::uint64_t get_u64(const json& v, const std::string& key) {
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0))) {
    bad(key, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

void set_if(const json& obj, const char* key, const std::string& prefix, double& target) {
  if (auto it = obj.find(key); it != obj.end()) target = get_double(*it, prefix + key);
}

ProcessNode node_with_overrides(NodeName name, const json& overrides) {
  ProcessNode node = ProcessNode::preset(name);
  set_if(overrides, "l_nom", "node_overrides.", node.l_nom);
  set_if(overrides, "d_nom", "node_overrides.", node.d_nom);
  set_if(overrides, "alpha", "node_overrides.", node.alpha);
  set_if(overrides, "k_temp_nom", "node_overrides.", node.k_temp_nom);
  set_if(overrides, "v_nom", "node_overrides.", node.v_nom);
  return node;
}

}  // namespace

ExperimentConfig RunConfig::experiment_for(NodeName node, std::size_t n_bits) const {
  ExperimentConfig cfg = experiment;
  cfg.node = node_with_overrides(node, node_overrides);
  cfg.layout = ArrayLayout(n_bits);
  return cfg;
}

RunConfig parse_run_config(const json& j) {
  check_keys(j,
             {"node", "node_overrides", "n_bits", "variation", "seed", "n_dies", "env_points",
              "noise_std", "n_reps", "output_dir", "comparison", "sweep"},
             "");
  RunConfig rc;
  ExperimentConfig& cfg = rc.experiment;

  NodeName node = NodeName::N90;
  if (auto it = j.find("node"); it != j.end()) {
    try {
      node = parse_node_name(get_string(*it, "node"));
    } catch (const ConfigError& e) {
      bad("node", e.what());
    }
  }
  if (auto it = j.find("node_overrides"); it != j.end()) {
    check_keys(*it, {"l_nom", "d_nom", "alpha", "k_temp_nom", "v_nom"}, "node_overrides.");
    rc.node_overrides = *it;
  }
  cfg.node = node_with_overrides(node, rc.node_overrides);

  if (auto it = j.find("n_bits"); it != j.end()) {
    const auto bits = get_u64(*it, "n_bits");
    if (!ArrayLayout::is_supported(bits)) bad("n_bits", "must be one of 16, 32, 64, 128");
    cfg.layout = ArrayLayout(bits);
  }
  if (auto it = j.find("variation"); it != j.end()) {
    const json& v = *it;
    check_keys(v, {"inter_frac", "intra_frac", "trunc_sigma", "sigma_k", "sigma_off", "mu_off"},
               "variation.");
    set_if(v, "inter_frac", "variation.", cfg.variation.inter_frac);
    set_if(v, "intra_frac", "variation.", cfg.variation.intra_frac);
    set_if(v, "trunc_sigma", "variation.", cfg.variation.trunc_sigma);
    set_if(v, "sigma_k", "variation.", cfg.variation.sigma_k);
    set_if(v, "sigma_off", "variation.", cfg.variation.sigma_off);
    set_if(v, "mu_off", "variation.", cfg.variation.mu_off);
  }
  if (auto it = j.find("seed"); it != j.end()) cfg.seed = get_u64(*it, "seed");
  if (auto it = j.find("n_dies"); it != j.end()) cfg.n_dies = get_u64(*it, "n_dies");
  if (auto it = j.find("env_points"); it != j.end()) {
    if (!it->is_array()) bad("env_points", "expected an array of temperatures");
    cfg.env_points.clear();
    for (const json& e : *it) {
      if (e.is_number()) {
        cfg.env_points.push_back(EnvPoint::at(e.get<double>()));
      } else {
        check_keys(e, {"temperature", "label"}, "env_points[].");
        if (!e.contains("temperature")) bad("env_points[].temperature", "missing");
        EnvPoint env = EnvPoint::at(get_double(e["temperature"], "env_points[].temperature"));
        if (e.contains("label")) env.label = get_string(e["label"], "env_points[].label");
        cfg.env_points.push_back(env);
      }
    }
  }
  if (auto it = j.find("noise_std"); it != j.end()) cfg.noise_std = get_double(*it, "noise_std");
  if (auto it = j.find("n_reps"); it != j.end()) cfg.n_reps = get_u64(*it, "n_reps");
  if (auto it = j.find("output_dir"); it != j.end()) {
    rc.output_dir = get_string(*it, "output_dir");
  }
  if (auto it = j.find("comparison"); it != j.end()) {
    const json& c = *it;
    check_keys(c, {"mode", "n_sampled", "seed"}, "comparison.");
    if (auto m = c.find("mode"); m != c.end()) {
      const std::string mode = get_string(*m, "comparison.mode");
      if (mode == "all" || mode == "all_pairs") {
        rc.comparison.mode = ComparisonPolicy::Mode::kAllPairs;
      } else if (mode == "sampled") {
        rc.comparison.mode = ComparisonPolicy::Mode::kSampled;
      } else {
        bad("comparison.mode", "expected 'all_pairs' or 'sampled'");
      }
    }
    if (auto n = c.find("n_sampled"); n != c.end()) {
      rc.comparison.n_sampled = get_u64(*n, "comparison.n_sampled");
    }
    if (auto s = c.find("seed"); s != c.end()) rc.comparison.seed = get_u64(*s, "comparison.seed");
  }
  if (auto it = j.find("sweep"); it != j.end()) {
    const json& s = *it;
    check_keys(s, {"nodes", "lengths"}, "sweep.");
    if (auto n = s.find("nodes"); n != s.end()) {
      if (!n->is_array() || n->empty()) bad("sweep.nodes", "expected a non-empty array");
      rc.sweep.nodes.clear();
      for (const json& name : *n) {
        try {
          rc.sweep.nodes.push_back(parse_node_name(get_string(name, "sweep.nodes[]")));
        } catch (const ConfigError& e) {
          bad("sweep.nodes", e.what());
        }
      }
    }
    if (auto l = s.find("lengths"); l != s.end()) {
      if (!l->is_array() || l->empty()) bad("sweep.lengths", "expected a non-empty array");
      rc.sweep.lengths.clear();
      for (const json& bits : *l) {
        const auto b = get_u64(bits, "sweep.lengths[]");
        if (!ArrayLayout::is_supported(b)) bad("sweep.lengths", "must be one of 16, 32, 64, 128");
        rc.sweep.lengths.push_back(b);
      }
    }
  }

  try {
    cfg.validate();
    rc.comparison.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace srpuf
