#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace srpuf {

/// Packed, fixed-length bit vector. Position 0 is the first response bit.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size, bool value = false);

  static BitVector from_string(std::string_view zeros_and_ones);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t pos) const noexcept {
    return (words_[pos >> 6] >> (pos & 63)) & 1U;
  }
  bool test(std::size_t pos) const;
  void set(std::size_t pos, bool value = true);
  void push_back(bool value);

  std::size_t count() const noexcept;
  BitVector complement() const;

  /// Hex text; position 0 is the most significant bit of the first digit.
  /// Trailing pad bits of the last digit are zero.
  std::string to_hex() const;
  static BitVector from_hex(std::string_view hex, std::size_t size);

  std::string to_string() const;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  void clear_padding() noexcept;

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace srpuf
