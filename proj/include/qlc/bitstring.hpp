/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qlc {

/// Hard limit on classical string length. Keeps every exhaustive search in
/// the library tractable; operations that would exceed it throw.
inline constexpr int kMaxStringLength = 24;

/// Magnitude threshold below which amplitudes, overlaps and residual norms
/// are treated as zero throughout the library.
inline constexpr double kTolerance = 1e-9;

// A classical bit string of length 0..24. Bit 0 is the leftmost (first
// transmitted) bit. The empty string is rendered as "eps".
class BitString {
 public:
  constexpr BitString() = default;  // epsilon

  BitString(std::uint32_t bits, int length) : bits_(bits), len_(length) {
    if (length < 0 || length > kMaxStringLength)
      throw std::invalid_argument("bit string length out of range");
    if ((bits >> length) != 0)
      throw std::invalid_argument("bit string value wider than its length");
  }

  static constexpr BitString epsilon() { return BitString(); }

  static BitString parse(std::string_view text) {
    if (text == "eps") return epsilon();
    if (text.empty() || text.size() > static_cast<std::size_t>(kMaxStringLength))
      throw std::invalid_argument("bad bit string literal: " + std::string(text));
    std::uint32_t bits = 0;
    for (char c : text) {
      if (c != '0' && c != '1')
        throw std::invalid_argument("bad bit string literal: " + std::string(text));
      bits = bits << 1 | static_cast<std::uint32_t>(c - '0');
    }
    return BitString(bits, static_cast<int>(text.size()));
  }

  int length() const { return len_; }
  bool empty() const { return len_ == 0; }
  std::uint32_t bits() const { return bits_; }

  int bit(int i) const {
    check_index(i);
    return static_cast<int>(bits_ >> (len_ - 1 - i)) & 1;
  }

  BitString with_bit(int i, int value) const {
    check_index(i);
    std::uint32_t mask = 1u << (len_ - 1 - i);
    return BitString(value ? (bits_ | mask) : (bits_ & ~mask), len_);
  }

  BitString concat(BitString rhs) const {
    if (len_ + rhs.len_ > kMaxStringLength)
      throw std::invalid_argument("bit string exceeds the 24-bit limit");
    return BitString(bits_ << rhs.len_ | rhs.bits_, len_ + rhs.len_);
  }

  /// Appends zeros on the right until the string has the given width.
  BitString padded_to(int width) const {
    if (width < len_) throw std::invalid_argument("register too small");
    return concat(BitString(0, width - len_));
  }

  BitString substr(int pos, int count) const {
    if (pos < 0 || count < 0 || pos + count > len_)
      throw std::invalid_argument("bit string slice out of range");
    std::uint32_t mask = count == 0 ? 0u : ((1u << count) - 1);
    return BitString(bits_ >> (len_ - pos - count) & mask, count);
  }

  bool is_prefix_of(BitString other) const {
    return len_ <= other.len_ && (other.bits_ >> (other.len_ - len_)) == bits_;
  }

  BitString suffix_after(BitString prefix) const {
    if (!prefix.is_prefix_of(*this))
      throw std::invalid_argument("not a prefix");
    int n = len_ - prefix.len_;
    std::uint32_t mask = n == 0 ? 0u : ((1u << n) - 1);
    return BitString(bits_ & mask, n);
  }

  std::string str() const {
    if (len_ == 0) return "eps";
    std::string s(static_cast<std::size_t>(len_), '0');
    for (int i = 0; i < len_; ++i) s[i] = static_cast<char>('0' + bit(i));
    return s;
  }

  // Canonical order: shorter strings first, then numeric (which coincides
  // with lexicographic at equal length).
  friend std::strong_ordering operator<=>(BitString a, BitString b) {
    if (a.len_ != b.len_) return a.len_ <=> b.len_;
    return a.bits_ <=> b.bits_;
  }
  friend bool operator==(BitString a, BitString b) = default;

 private:
  void check_index(int i) const {
    if (i < 0 || i >= len_) throw std::invalid_argument("bit index out of range");
  }

  std::uint32_t bits_ = 0;
  int len_ = 0;
};

}  // namespace qlc
