#include "srpuf/array.hpp"

#include <cstdio>
#include <string>

#include "srpuf/error.hpp"
#include "srpuf/montecarlo.hpp"

namespace srpuf {

namespace {

constexpr const char* kMismatch = "challenge/layout mismatch";

void check_die(const DieSample& die, const ArrayLayout& layout) {
  if (die.cells.size() != layout.n_bits()) {
    throw ChallengeError("die has " + std::to_string(die.cells.size()) + " cells, layout needs " +
                         std::to_string(layout.n_bits()));
  }
}

std::string challenge_label(const Challenge& c) { return c.to_hex(); }

}  // namespace

CellPosition CellPosition::from_index(std::size_t index) noexcept {
  const std::size_t in_grid = index % ArrayLayout::kCellsPerGrid;
  return {index / ArrayLayout::kCellsPerGrid, in_grid / ArrayLayout::kGridCols,
          in_grid % ArrayLayout::kGridCols};
}

CellPosition CellPosition::from_group(std::size_t grid, std::size_t group,
                                      std::size_t local) noexcept {
  return {grid, (group / 2) * 2 + local / 2, (group % 2) * 2 + local % 2};
}

ArrayLayout::ArrayLayout(std::size_t n_bits) : n_bits_(n_bits) {
  if (!is_supported(n_bits)) {
    throw ConfigError("n_bits must be one of 16, 32, 64, 128 (got " + std::to_string(n_bits) +
                      ")");
  }
}

bool ArrayLayout::is_supported(std::size_t n_bits) noexcept {
  return n_bits == 16 || n_bits == 32 || n_bits == 64 || n_bits == 128;
}

Challenge Challenge::uniform(const ArrayLayout& layout, std::uint8_t local, bool puf_mode) {
  const Selector sel = puf_mode ? Selector::puf(local) : Selector::regular(local);
  return Challenge{std::vector<std::vector<Selector>>(
      layout.n_grids(), std::vector<Selector>(ArrayLayout::kGroupsPerGrid, sel))};
}

Challenge Challenge::all_cells(const ArrayLayout& layout) {
  std::vector<Selector> rounds;
  for (std::uint8_t local = 0; local < 4; ++local) {
    for (std::size_t group = 0; group < ArrayLayout::kGroupsPerGrid; ++group) {
      rounds.push_back(Selector::puf(local));
    }
  }
  return Challenge{std::vector<std::vector<Selector>>(layout.n_grids(), rounds)};
}

std::vector<std::uint8_t> Challenge::pack() const {
  std::size_t total = 0;
  for (const auto& g : grids) total += g.size();
  std::vector<std::uint8_t> bytes((3 * total + 7) / 8, 0);
  std::size_t bit = 0;
  for (const auto& g : grids) {
    for (Selector s : g) {
      for (int k = 0; k < 3; ++k, ++bit) {
        if ((s.word >> k) & 1) bytes[bit / 8] |= static_cast<std::uint8_t>(1U << (bit % 8));
      }
    }
  }
  return bytes;
}

std::string Challenge::to_hex() const {
  std::string out;
  for (std::uint8_t b : pack()) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", b);
    out += buf;
  }
  return out;
}

Challenge Challenge::unpack(std::span<const std::uint8_t> bytes, std::size_t n_grids,
                            std::size_t selectors_per_grid) {
  const std::size_t total = n_grids * selectors_per_grid;
  if (bytes.size() != (3 * total + 7) / 8) throw ChallengeError(kMismatch);
  Challenge c;
  c.grids.assign(n_grids, std::vector<Selector>(selectors_per_grid));
  std::size_t bit = 0;
  for (auto& g : c.grids) {
    for (Selector& s : g) {
      for (int k = 0; k < 3; ++k, ++bit) {
        if ((bytes[bit / 8] >> (bit % 8)) & 1) s.word |= static_cast<std::uint8_t>(1U << k);
      }
    }
  }
  for (; bit < bytes.size() * 8; ++bit) {
    if ((bytes[bit / 8] >> (bit % 8)) & 1) throw ChallengeError(kMismatch);
  }
  return c;
}

Challenge Challenge::from_hex(std::string_view hex, std::size_t n_grids,
                              std::size_t selectors_per_grid) {
  if (hex.size() % 2 != 0) throw ChallengeError(kMismatch);
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    unsigned value = 0;
    for (std::size_t k = 0; k < 2; ++k) {
      const char ch = hex[i + k];
      unsigned d;
      if (ch >= '0' && ch <= '9') {
        d = static_cast<unsigned>(ch - '0');
      } else if (ch >= 'a' && ch <= 'f') {
        d = static_cast<unsigned>(ch - 'a' + 10);
      } else if (ch >= 'A' && ch <= 'F') {
        d = static_cast<unsigned>(ch - 'A' + 10);
      } else {
        throw ChallengeError(kMismatch);
      }
      value = value * 16 + d;
    }
    bytes.push_back(static_cast<std::uint8_t>(value));
  }
  return unpack(bytes, n_grids, selectors_per_grid);
}

DecodedChallenge decode_challenge(const ArrayLayout& layout, const Challenge& challenge) {
  if (challenge.grids.size() != layout.n_grids()) throw ChallengeError(kMismatch);
  bool any_puf = false;
  bool any_regular = false;
  for (const auto& g : challenge.grids) {
    if (g.empty() || g.size() % ArrayLayout::kGroupsPerGrid != 0) throw ChallengeError(kMismatch);
    for (Selector s : g) {
      if (s.word & ~Selector::kMask) throw ChallengeError(kMismatch);
      (s.puf_mode() ? any_puf : any_regular) = true;
    }
  }
  if (any_puf && any_regular) throw ChallengeError(kMismatch);

  DecodedChallenge out;
  out.puf_mode = any_puf;
  if (!out.puf_mode) return out;
  for (std::size_t grid = 0; grid < challenge.grids.size(); ++grid) {
    const auto& g = challenge.grids[grid];
    for (std::size_t k = 0; k < g.size(); ++k) {
      out.cells.push_back(
          CellPosition::from_group(grid, k % ArrayLayout::kGroupsPerGrid, g[k].local()));
    }
  }
  return out;
}

ResponseBits full_response(const DieSample& die, const ArrayLayout& layout,
                           const ProcessNode& node, const EnvPoint& env, NoiseSource& noise) {
  check_die(die, layout);
  ResponseBits out{BitVector(layout.n_bits()), die.die_id, env.label, "full"};
  for (std::size_t i = 0; i < layout.n_bits(); ++i) {
    const RaceOutcome race = resolve_race(die.cells[i], node, env, noise.eta(i));
    out.bits.set(i, race.bit);
    out.n_marginal += race.marginal ? 1 : 0;
  }
  return out;
}

ResponseBits challenge_response(const DieSample& die, const ArrayLayout& layout,
                                const ProcessNode& node, const EnvPoint& env,
                                const Challenge& challenge, NoiseSource& noise) {
  check_die(die, layout);
  const DecodedChallenge decoded = decode_challenge(layout, challenge);
  if (!decoded.puf_mode) throw ChallengeError("not in PUF mode");
  ResponseBits out{BitVector(decoded.cells.size()), die.die_id, env.label,
                   challenge_label(challenge)};
  for (std::size_t i = 0; i < decoded.cells.size(); ++i) {
    const std::size_t index = decoded.cells[i].index();
    const RaceOutcome race = resolve_race(die.cells[index], node, env, noise.eta(index));
    out.bits.set(i, race.bit);
    out.n_marginal += race.marginal ? 1 : 0;
  }
  return out;
}

void register_step(std::span<SrffState> states, const BitVector& set, const BitVector& reset) {
  if (set.size() != states.size() || reset.size() != states.size()) {
    throw ChallengeError("register width mismatch");
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    states[i] = srff_step(set[i], reset[i], states[i]);
  }
}

}  // namespace srpuf
