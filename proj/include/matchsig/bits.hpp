#pragma once

// Bit strings x = x_1 ... x_n packed into a table index. Bit x_i is stored at
// position i-1, so x_1 is the least significant bit and fixing the last bit
// x_n selects one half of a truth table.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace matchsig {

using Bits = std::uint32_t;

inline constexpr int kMaxBits = 24;

/// e_i for 1-based i.
constexpr Bits unit(int i) { return Bits{1} << (i - 1); }

constexpr bool test_bit(Bits x, int i) { return (x >> (i - 1)) & 1u; }

constexpr int weight(Bits x) { return std::popcount(x); }

/// |x|_j^k: the number of set bits among x_j ... x_k (0 when k < j).
constexpr int partial_weight(Bits x, int j, int k) {
  if (k < j) return 0;
  Bits mask = (k >= 32 ? ~Bits{0} : (Bits{1} << k) - 1) & ~((Bits{1} << (j - 1)) - 1);
  return std::popcount(x & mask);
}

/// Renders x as x_n ... x_1, most significant bit on the left.
inline std::string bits_to_string(Bits x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 1; i <= n; ++i)
    if (test_bit(x, i)) s[static_cast<std::size_t>(n - i)] = '1';
  return s;
}

/// Inverse of bits_to_string.
inline Bits bits_from_string(std::string_view s) {
  if (s.empty() || s.size() > kMaxBits) throw std::invalid_argument("bit string length out of range");
  Bits x = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0 and 1");
    x = (x << 1) | static_cast<Bits>(c == '1');
  }
  return x;
}

}  // namespace matchsig
