#pragma once

#include "srpuf/variation.hpp"

namespace srpuf {

/// One SR flip-flop seen through its cross-coupled feedback pair.
struct SrffCell {
  GateParams nd1;           ///< feedback NAND driving Q
  GateParams nd2;           ///< feedback NAND driving Q-bar
  double sys_offset = 0.0;  ///< ps, position-determined skew on nd1's path

  friend bool operator==(const SrffCell&, const SrffCell&) = default;
};

struct SrffState {
  bool q = false;
  bool q_bar = true;
  bool consistent = true;  ///< false only in the forbidden S=R=1 state

  friend bool operator==(const SrffState&, const SrffState&) = default;
};

/// Regular-mode latch semantics. S=R=1 drives both outputs high and marks
/// the state inconsistent.
SrffState srff_step(bool s, bool r, const SrffState& prev) noexcept;

struct RaceOutcome {
  bool bit = false;
  bool marginal = false;  ///< exact tie, resolved to 0
};

/// Signed race skew: (delay(nd1) + sys_offset) - delay(nd2), in ps.
double race_delta(const SrffCell& cell, const ProcessNode& node, const EnvPoint& env);

/// Outcome of releasing S=R=1 -> 0. The faster feedback gate wins: bit 1
/// when delta + eta < 0, bit 0 otherwise (an exact tie is flagged marginal).
RaceOutcome resolve_race(const SrffCell& cell, const ProcessNode& node, const EnvPoint& env,
                         double eta);

/// Distance of the cell from the metastable boundary, |race_delta|.
double margin(const SrffCell& cell, const ProcessNode& node, const EnvPoint& env);

}  // namespace srpuf
