#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srpuf/bits.hpp"
#include "srpuf/srff.hpp"

namespace srpuf {

struct DieSample;

/// Grid coordinates of one SR-FF. Cells are numbered row-major inside each
/// 4x4 grid and grid-major across stacked grids.
struct CellPosition {
  std::size_t grid = 0;
  std::size_t row = 0;
  std::size_t col = 0;

  std::size_t index() const noexcept { return grid * 16 + row * 4 + col; }
  /// 2x2 MUX group inside the grid, row-major: 0..3.
  std::size_t mux_group() const noexcept { return (row / 2) * 2 + col / 2; }
  /// Cell inside its MUX group, row-major: 0..3.
  std::size_t group_local() const noexcept { return (row % 2) * 2 + col % 2; }

  static CellPosition from_index(std::size_t index) noexcept;
  static CellPosition from_group(std::size_t grid, std::size_t group, std::size_t local) noexcept;

  friend bool operator==(const CellPosition&, const CellPosition&) = default;
};

/// n-bit array built from stacked 4x4 centroid grids.
class ArrayLayout {
 public:
  static constexpr std::size_t kGridRows = 4;
  static constexpr std::size_t kGridCols = 4;
  static constexpr std::size_t kCellsPerGrid = kGridRows * kGridCols;
  static constexpr std::size_t kGroupsPerGrid = 4;

  /// n_bits must be one of 16, 32, 64, 128; throws ConfigError otherwise.
  explicit ArrayLayout(std::size_t n_bits = 128);

  std::size_t n_bits() const noexcept { return n_bits_; }
  std::size_t n_grids() const noexcept { return n_bits_ / kCellsPerGrid; }

  static bool is_supported(std::size_t n_bits) noexcept;

  friend bool operator==(const ArrayLayout&, const ArrayLayout&) = default;

 private:
  std::size_t n_bits_;
};

/// One 3-bit MUX selector word: bits 0-1 pick a cell in the 2x2 group,
/// bit 2 is the mode (1 = PUF, 0 = regular register).
struct Selector {
  std::uint8_t word = 0;

  static constexpr std::uint8_t kModeBit = 0x4;
  static constexpr std::uint8_t kMask = 0x7;

  static Selector puf(std::uint8_t local) noexcept {
    return Selector{static_cast<std::uint8_t>(kModeBit | (local & 0x3))};
  }
  static Selector regular(std::uint8_t local = 0) noexcept {
    return Selector{static_cast<std::uint8_t>(local & 0x3)};
  }
  bool puf_mode() const noexcept { return (word & kModeBit) != 0; }
  std::size_t local() const noexcept { return word & 0x3; }

  friend bool operator==(const Selector&, const Selector&) = default;
};

/// Per-grid selector sequences. Within a grid, selector k drives MUX group
/// k mod 4; each run of four selectors is one selection round, so a grid
/// accepts any multiple of four selectors.
struct Challenge {
  std::vector<std::vector<Selector>> grids;

  /// One round per grid, every MUX set to the same local cell.
  static Challenge uniform(const ArrayLayout& layout, std::uint8_t local, bool puf_mode = true);
  /// Four rounds per grid visiting every cell once.
  static Challenge all_cells(const ArrayLayout& layout);

  /// Fixed-width 3-bit little-endian packing, grid-major; the bit count is
  /// 3 * total selectors. The hex form prints the bytes in order.
  std::vector<std::uint8_t> pack() const;
  std::string to_hex() const;
  /// selectors_per_grid gives the grid structure the packed form omits.
  static Challenge unpack(std::span<const std::uint8_t> bytes, std::size_t n_grids,
                          std::size_t selectors_per_grid);
  static Challenge from_hex(std::string_view hex, std::size_t n_grids,
                            std::size_t selectors_per_grid);

  friend bool operator==(const Challenge&, const Challenge&) = default;
};

struct DecodedChallenge {
  bool puf_mode = true;  ///< false: regular register mode, no cells selected
  std::vector<CellPosition> cells;
};

/// Maps a challenge to the ordered cells it evaluates: grid-major, then
/// round, then MUX group. Throws ChallengeError("challenge/layout mismatch")
/// on a wrong grid count, a grid whose length is not a positive multiple of
/// four, or a selector with bits above the 3-bit width, and on mixed modes.
DecodedChallenge decode_challenge(const ArrayLayout& layout, const Challenge& challenge);

struct ResponseBits {
  BitVector bits;
  std::uint32_t die_id = 0;
  std::string env_label;
  std::string challenge_id;
  std::uint32_t n_marginal = 0;  ///< cells that resolved through an exact tie

  friend bool operator==(const ResponseBits&, const ResponseBits&) = default;
};

/// Source of evaluation noise eta for cell `index` of one evaluation.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double eta(std::size_t cell_index) = 0;
};

/// Zero noise: the reference ("golden") evaluation.
class NoNoise final : public NoiseSource {
 public:
  double eta(std::size_t) override { return 0.0; }
};

/// Evaluate every cell of the die in position order.
ResponseBits full_response(const DieSample& die, const ArrayLayout& layout, const ProcessNode& node,
                           const EnvPoint& env, NoiseSource& noise);

/// Evaluate only the cells a PUF-mode challenge selects, in decode order.
/// Throws ChallengeError("not in PUF mode") for a regular-mode challenge.
ResponseBits challenge_response(const DieSample& die, const ArrayLayout& layout,
                                const ProcessNode& node, const EnvPoint& env,
                                const Challenge& challenge, NoiseSource& noise);

/// Regular register mode: srff_step applied cell-wise.
void register_step(std::span<SrffState> states, const BitVector& set, const BitVector& reset);

}  // namespace srpuf
