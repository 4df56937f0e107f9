#pragma once

#include <string>
#include <string_view>

#include "srpuf/rng.hpp"

namespace srpuf {

enum class NodeName { N90, N45, N32 };

std::string_view to_string(NodeName name) noexcept;
NodeName parse_node_name(std::string_view text);  // throws ConfigError

/// Nominal device parameters of one process node.
struct ProcessNode {
  NodeName name = NodeName::N90;
  double l_nom = 90.0;         ///< channel length, nm
  double d_nom = 35.0;         ///< nominal NAND propagation delay, ps
  double alpha = 1.3;          ///< delay-vs-length exponent
  double k_temp_nom = 0.0012;  ///< fractional delay change per degree C
  double v_nom = 1.0;          ///< supply, V

  static ProcessNode preset(NodeName name) noexcept;

  void validate() const;  // throws ConfigError

  friend bool operator==(const ProcessNode&, const ProcessNode&) = default;
};

/// Process-variation envelope.
///
/// Fractional deviations are zero-mean normals with sigma = bound / trunc_sigma,
/// rejection-truncated at the bound.
struct VariationSpec {
  double inter_frac = 0.33;
  double intra_frac = 0.15;
  double trunc_sigma = 3.0;
  double sigma_k = 0.004;   ///< relative spread of per-gate temperature sensitivity
  double sigma_off = 0.05;  ///< ps, spread of per-position systematic skew
  double mu_off = 0.2;      ///< ps, mean per-position systematic skew

  void validate() const;  // throws ConfigError

  friend bool operator==(const VariationSpec&, const VariationSpec&) = default;
};

struct GateParams {
  double length_factor = 1.0;  ///< global x local multiplier on l_nom
  double k_temp = 0.0012;

  friend bool operator==(const GateParams&, const GateParams&) = default;
};

struct EnvPoint {
  double temperature = 25.0;  ///< degrees C
  std::string label;

  static constexpr double kMinTemperature = -40.0;
  static constexpr double kMaxTemperature = 125.0;
  static constexpr double kReferenceTemperature = 25.0;

  static EnvPoint at(double temperature);

  void validate() const;  // throws ConfigError

  friend bool operator==(const EnvPoint&, const EnvPoint&) = default;
};

/// Rejection-sample N(0, sigma^2) restricted to [-bound, bound].
/// Returns exactly 0 when sigma or bound is zero. Throws ModelError after
/// 1000 consecutive rejections.
double sample_truncated_normal(double sigma, double bound, Stream& rng);

/// Die-wide fractional channel-length shift.
double sample_global_shift(const VariationSpec& spec, Stream& rng);

/// One gate's parameters on a die with the given global shift.
GateParams sample_gate(const VariationSpec& spec, const ProcessNode& node,
                       double global_shift, Stream& rng);

/// delay = d_nom * length_factor^alpha * (1 + k_temp * (T - 25)), in ps.
/// Throws ModelError if the result is not strictly positive.
double gate_delay(const ProcessNode& node, const GateParams& gate, const EnvPoint& env);

}  // namespace srpuf
