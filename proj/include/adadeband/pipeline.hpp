#pragma once

#include <optional>

#include "adadeband/detect.hpp"
#include "adadeband/frame.hpp"
#include "adadeband/noise.hpp"
#include "adadeband/quantize.hpp"
#include "adadeband/reconstruct.hpp"
#include "adadeband/regions.hpp"

namespace adadeband {

struct PipelineConfig {
  DetectorParams detector;
  LpfParams lpf;
  NoiseSpec noise;
  bool dump_maps = false;
  std::optional<int> profile_row;
  int threads = 1;

  void validate() const {
    detector.validate();
    lpf.validate();
    noise.validate();
  }
};

/// Output frame plus the intermediate maps, kept for diagnostics,
/// profiling and tests.
struct FrameDebandResult {
  LumaFrame output;
  PixelLabelMap labels;
  RegionIndex regions;
  RadiusMap radii;
  PrecisionFrame reconstruction;
};

/// Full single-frame pipeline: detect banding, reconstruct the gradient
/// with size-varying moving averages, requantize with dither, and splice
/// the result over the banded pixels only. Detection runs on the
/// pre-filtered frame; the reconstruction averages the unmodified input.
inline FrameDebandResult deband_frame(const LumaFrame& frame,
                                      const PipelineConfig& config,
                                      int frame_index = 0) {
  config.validate();
  if (frame.bit_depth != 8)
    throw std::invalid_argument("deband_frame: expects an 8-bit frame");
  const int threads = config.threads;

  FrameDebandResult res;
  PrecisionFrame pre = prefilter(frame, config.detector, threads);
  GradientField grad = compute_gradient(pre, threads);
  res.labels = classify(grad.magnitude, config.detector);
  res.labels = extract_band_edges(res.labels, grad, threads);
  res.regions = build_regions(res.labels);
  res.radii = build_radius_map(res.labels, res.regions, config.lpf, threads);
  res.reconstruction = apply_adaptive_lpf(promote(frame), res.radii, threads);
  PrecisionFrame noise = generate_noise(config.noise, frame.width,
                                        frame.height, frame_index, threads);
  LumaFrame dithered =
      dither_quantize(res.reconstruction, noise, Quantizer{}, threads);
  res.output = passthrough_compose(frame, dithered, res.radii);
  return res;
}

}  // namespace adadeband
