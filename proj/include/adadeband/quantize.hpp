#pragma once

#include <cmath>
#include <stdexcept>

#include "adadeband/frame.hpp"
#include "adadeband/parallel.hpp"
#include "adadeband/reconstruct.hpp"

namespace adadeband {

/// Real-to-8-bit quantizer: round half away from zero, clamp to [0, 255].
struct Quantizer {
  int out_bit_depth = 8;

  uint16_t quantize(double v) const {
    double r = std::round(v);
    if (r < 0.0) return 0;
    if (r > 255.0) return 255;
    return static_cast<uint16_t>(r);
  }
};

/// Adds the noise image to the reconstruction and requantizes to 8 bits.
inline LumaFrame dither_quantize(const PrecisionFrame& recon,
                                 const PrecisionFrame& noise,
                                 const Quantizer& q = {}, int threads = 1) {
  if (!recon.same_shape(noise))
    throw std::invalid_argument("dither_quantize: dimension mismatch");
  LumaFrame out(recon.width, recon.height, 8);
  parallel_rows(recon.height, threads, [&](int i) {
    for (int j = 0; j < recon.width; ++j)
      out.at(i, j) = q.quantize(recon.at(i, j) + noise.at(i, j));
  });
  return out;
}

/// Plain requantization (zero dither).
inline LumaFrame quantize_frame(const PrecisionFrame& recon,
                                const Quantizer& q = {}, int threads = 1) {
  LumaFrame out(recon.width, recon.height, 8);
  parallel_rows(recon.height, threads, [&](int i) {
    for (int j = 0; j < recon.width; ++j)
      out.at(i, j) = q.quantize(recon.at(i, j));
  });
  return out;
}

/// Assembles the final frame: the dithered value where a pixel was
/// filtered, the untouched original everywhere else.
inline LumaFrame passthrough_compose(const LumaFrame& original,
                                     const LumaFrame& debanded,
                                     const RadiusMap& radii) {
  require_same_shape(original, debanded, "passthrough_compose");
  if (original.width != radii.width || original.height != radii.height)
    throw std::invalid_argument("passthrough_compose: radius map mismatch");
  LumaFrame out = original;
  for (size_t k = 0; k < out.samples.size(); ++k)
    if (radii.filtered(k)) out.samples[k] = debanded.samples[k];
  return out;
}

}  // namespace adadeband
