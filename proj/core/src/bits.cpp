#include "srpuf/bits.hpp"

#include <bit>
#include <stdexcept>

namespace srpuf {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitVector::BitVector(std::size_t size, bool value)
    : words_(words_for(size), value ? ~std::uint64_t{0} : 0), size_(size) {
  clear_padding();
}

BitVector BitVector::from_string(std::string_view zeros_and_ones) {
  BitVector v(zeros_and_ones.size());
  for (std::size_t i = 0; i < zeros_and_ones.size(); ++i) {
    const char c = zeros_and_ones[i];
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0 and 1");
    v.set(i, c == '1');
  }
  return v;
}

bool BitVector::test(std::size_t pos) const {
  if (pos >= size_) throw std::out_of_range("bit position out of range");
  return (*this)[pos];
}

void BitVector::set(std::size_t pos, bool value) {
  if (pos >= size_) throw std::out_of_range("bit position out of range");
  const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
  if (value) {
    words_[pos >> 6] |= mask;
  } else {
    words_[pos >> 6] &= ~mask;
  }
}

void BitVector::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  set(size_ - 1, value);
}

std::size_t BitVector::count() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitVector BitVector::complement() const {
  BitVector out = *this;
  for (std::uint64_t& w : out.words_) w = ~w;
  out.clear_padding();
  return out;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve((size_ + 3) / 4);
  for (std::size_t base = 0; base < size_; base += 4) {
    int nibble = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      nibble <<= 1;
      if (base + k < size_ && (*this)[base + k]) nibble |= 1;
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t size) {
  if (hex.size() != (size + 3) / 4) {
    throw std::invalid_argument("hex length does not match bit count");
  }
  BitVector v(size);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int nibble = hex_value(hex[d]);
    if (nibble < 0) throw std::invalid_argument("invalid hex digit");
    for (std::size_t k = 0; k < 4; ++k) {
      const bool bit = (nibble >> (3 - k)) & 1;
      const std::size_t pos = d * 4 + k;
      if (pos < size) {
        v.set(pos, bit);
      } else if (bit) {
        throw std::invalid_argument("nonzero padding bits in hex");
      }
    }
  }
  return v;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

void BitVector::clear_padding() noexcept {
  if (const std::size_t tail = size_ & 63; tail != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
}

}  // namespace srpuf
