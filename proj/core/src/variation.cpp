#include "srpuf/variation.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "srpuf/error.hpp"

namespace srpuf {

namespace {

constexpr int kMaxRejections = 1000;

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::string_view to_string(NodeName name) noexcept {
  switch (name) {
    case NodeName::N90: return "N90";
    case NodeName::N45: return "N45";
    case NodeName::N32: return "N32";
  }
  return "?";
}

NodeName parse_node_name(std::string_view text) {
  if (text == "N90" || text == "90nm") return NodeName::N90;
  if (text == "N45" || text == "45nm") return NodeName::N45;
  if (text == "N32" || text == "32nm") return NodeName::N32;
  throw ConfigError("unknown process node '" + std::string(text) + "' (expected N90, N45 or N32)");
}

ProcessNode ProcessNode::preset(NodeName name) noexcept {
  switch (name) {
    case NodeName::N90: return {NodeName::N90, 90.0, 35.0, 1.3, 0.0012, 1.0};
    case NodeName::N45: return {NodeName::N45, 45.0, 22.0, 1.3, 0.0012, 1.0};
    case NodeName::N32: return {NodeName::N32, 32.0, 18.0, 1.3, 0.0012, 1.0};
  }
  return {};
}

void ProcessNode::validate() const {
  if (!(finite(l_nom) && l_nom > 0)) throw ConfigError("node.l_nom must be > 0");
  if (!(finite(d_nom) && d_nom > 0)) throw ConfigError("node.d_nom must be > 0");
  if (!(finite(alpha) && alpha > 0)) throw ConfigError("node.alpha must be > 0");
  if (!(finite(k_temp_nom) && k_temp_nom > 0)) throw ConfigError("node.k_temp_nom must be > 0");
  if (!(finite(v_nom) && v_nom > 0)) throw ConfigError("node.v_nom must be > 0");
}

void VariationSpec::validate() const {
  if (!(finite(inter_frac) && inter_frac >= 0 && inter_frac < 1)) {
    throw ConfigError("variation.inter_frac must be in [0, 1)");
  }
  if (!(finite(intra_frac) && intra_frac >= 0 && intra_frac < 1)) {
    throw ConfigError("variation.intra_frac must be in [0, 1)");
  }
  if (inter_frac + intra_frac >= 1) {
    throw ConfigError("variation.inter_frac + variation.intra_frac must be < 1");
  }
  if (!(finite(trunc_sigma) && trunc_sigma > 0)) {
    throw ConfigError("variation.trunc_sigma must be > 0");
  }
  // k_temp = k_nom * (1 + delta) with |delta| <= 3 sigma_k must stay positive.
  if (!(finite(sigma_k) && sigma_k >= 0 && 3 * sigma_k < 1)) {
    throw ConfigError("variation.sigma_k must be in [0, 1/3)");
  }
  if (!(finite(sigma_off) && sigma_off >= 0)) {
    throw ConfigError("variation.sigma_off must be >= 0");
  }
  if (!finite(mu_off)) throw ConfigError("variation.mu_off must be finite");
}

EnvPoint EnvPoint::at(double temperature) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%gC", temperature);
  return {temperature, buf};
}

void EnvPoint::validate() const {
  if (!(finite(temperature) && temperature >= kMinTemperature &&
        temperature <= kMaxTemperature)) {
    throw ConfigError("temperature " + std::to_string(temperature) +
                      " outside [-40, 125] degrees C");
  }
}

double sample_truncated_normal(double sigma, double bound, Stream& rng) {
  if (sigma == 0.0 || bound == 0.0) return 0.0;
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double x = sigma * rng.normal();
    if (std::abs(x) <= bound) return x;
  }
  throw ModelError("degenerate variation spec");
}

double sample_global_shift(const VariationSpec& spec, Stream& rng) {
  return sample_truncated_normal(spec.inter_frac / spec.trunc_sigma, spec.inter_frac, rng);
}

GateParams sample_gate(const VariationSpec& spec, const ProcessNode& node, double global_shift,
                       Stream& rng) {
  const double local =
      sample_truncated_normal(spec.intra_frac / spec.trunc_sigma, spec.intra_frac, rng);
  const double delta = sample_truncated_normal(spec.sigma_k, 3.0 * spec.sigma_k, rng);
  return {1.0 + global_shift + local, node.k_temp_nom * (1.0 + delta)};
}

double gate_delay(const ProcessNode& node, const GateParams& gate, const EnvPoint& env) {
  const double delay = node.d_nom * std::pow(gate.length_factor, node.alpha) *
                       (1.0 + gate.k_temp * (env.temperature - EnvPoint::kReferenceTemperature));
  if (!(delay > 0.0) || !std::isfinite(delay)) {
    throw ModelError("non-positive gate delay " + std::to_string(delay) + " ps");
  }
  return delay;
}

}  // namespace srpuf
