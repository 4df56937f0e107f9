#include "srpuf/srff.hpp"

#include <cmath>

namespace srpuf {

SrffState srff_step(bool s, bool r, const SrffState& prev) noexcept {
  if (s && r) return {true, true, false};
  if (s) return {true, false, true};
  if (r) return {false, true, true};
  return prev;
}

double race_delta(const SrffCell& cell, const ProcessNode& node, const EnvPoint& env) {
  return (gate_delay(node, cell.nd1, env) + cell.sys_offset) - gate_delay(node, cell.nd2, env);
}

RaceOutcome resolve_race(const SrffCell& cell, const ProcessNode& node, const EnvPoint& env,
                         double eta) {
  const double skew = race_delta(cell, node, env) + eta;
  return {skew < 0.0, skew == 0.0};
}

double margin(const SrffCell& cell, const ProcessNode& node, const EnvPoint& env) {
  return std::abs(race_delta(cell, node, env));
}

}  // namespace srpuf
