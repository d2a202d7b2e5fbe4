#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "softnc/rng.hpp"

namespace softnc {

using BitFrame = std::vector<std::uint8_t>;

inline BitFrame random_bits(std::size_t n, Rng& rng) {
  BitFrame bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = rng.bit() ? 1 : 0;
  return bits;
}

inline BitFrame xor_frames(const BitFrame& a, const BitFrame& b) {
  BitFrame out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

inline std::size_t hamming_distance(const BitFrame& a, const BitFrame& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

}  // namespace softnc
