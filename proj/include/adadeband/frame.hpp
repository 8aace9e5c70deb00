#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adadeband {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 2-D grid of integer luma samples with a declared bit depth (8 or 16).
/// Row-major, samples[i * width + j] is row i, column j.
struct LumaFrame {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::vector<uint16_t> samples;

  LumaFrame() = default;

  LumaFrame(int w, int h, int depth = 8, uint16_t fill = 0)
      : width(w), height(h), bit_depth(depth) {
    if (w < 1 || h < 1)
      throw std::invalid_argument("LumaFrame: dimensions must be >= 1");
    if (depth != 8 && depth != 16)
      throw std::invalid_argument("LumaFrame: bit depth must be 8 or 16");
    if (fill > max_value())
      throw std::invalid_argument("LumaFrame: fill exceeds bit depth range");
    samples.assign(static_cast<size_t>(w) * h, fill);
  }

  int max_value() const { return (1 << bit_depth) - 1; }

  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * width + j;
  }

  uint16_t at(int i, int j) const { return samples[index(i, j)]; }
  uint16_t& at(int i, int j) { return samples[index(i, j)]; }

  bool same_shape(const LumaFrame& o) const {
    return width == o.width && height == o.height;
  }
};

/// 2-D grid of real-valued samples; the high-precision intermediate domain.
struct PrecisionFrame {
  int width = 0;
  int height = 0;
  std::vector<double> samples;

  PrecisionFrame() = default;

  PrecisionFrame(int w, int h, double fill = 0.0) : width(w), height(h) {
    if (w < 1 || h < 1)
      throw std::invalid_argument("PrecisionFrame: dimensions must be >= 1");
    samples.assign(static_cast<size_t>(w) * h, fill);
  }

  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * width + j;
  }

  double at(int i, int j) const { return samples[index(i, j)]; }
  double& at(int i, int j) { return samples[index(i, j)]; }

  bool same_shape(const PrecisionFrame& o) const {
    return width == o.width && height == o.height;
  }
};

enum class BorderMode { Replicate };

/// Out-of-frame coordinates resolve to the nearest in-frame pixel.
struct BorderPolicy {
  BorderMode mode = BorderMode::Replicate;
};

namespace detail {
inline int clamp_index(int v, int hi) {
  return v < 0 ? 0 : (v > hi ? hi : v);
}
}  // namespace detail

inline uint16_t sample_with_border(const LumaFrame& f, int i, int j,
                                   BorderPolicy = {}) {
  return f.at(detail::clamp_index(i, f.height - 1),
              detail::clamp_index(j, f.width - 1));
}

inline double sample_with_border(const PrecisionFrame& f, int i, int j,
                                 BorderPolicy = {}) {
  return f.at(detail::clamp_index(i, f.height - 1),
              detail::clamp_index(j, f.width - 1));
}

/// Value-preserving conversion into the real-valued domain.
inline PrecisionFrame promote(const LumaFrame& f) {
  PrecisionFrame out(f.width, f.height);
  for (size_t k = 0; k < f.samples.size(); ++k)
    out.samples[k] = static_cast<double>(f.samples[k]);
  return out;
}

inline void require_same_shape(const LumaFrame& a, const LumaFrame& b,
                               const char* what) {
  if (!a.same_shape(b))
    throw FormatError(std::string(what) + ": frame dimensions differ");
}

}  // namespace adadeband
