#pragma once

#include <cstdint>

namespace adadeband::detail {

// splitmix64 finalizer; full-avalanche 64-bit mix.
inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based generator: one mixed word per (seed, stream, frame, y, x)
// key, so every pixel draws independently of evaluation order.
inline uint64_t hash_coords(uint64_t seed, uint64_t stream, uint64_t frame,
                            uint64_t y, uint64_t x) {
  uint64_t h = mix64(seed ^ 0xA0761D6478BD642FULL);
  h = mix64(h ^ stream);
  h = mix64(h ^ frame);
  h = mix64(h ^ y);
  return mix64(h ^ x);
}

// Uniform in [0, 1), 53 mantissa bits.
inline double unit_double(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1]; safe under log().
inline double unit_double_open(uint64_t h) {
  return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

}  // namespace adadeband::detail
