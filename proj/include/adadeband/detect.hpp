#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adadeband/frame.hpp"
#include "adadeband/parallel.hpp"

namespace adadeband {

/// Gradient-magnitude thresholds (luma levels per pixel on the
/// slope-normalized Sobel scale) and pre-filter shape.
struct DetectorParams {
  double t1 = 2.0;
  double t2 = 12.0;
  int prefilter_radius = 1;
  int prefilter_passes = 1;

  void validate() const {
    if (!(t1 > 0.0 && t1 < t2))
      throw std::invalid_argument("DetectorParams: need 0 < t1 < t2");
    if (prefilter_radius < 1 || prefilter_passes < 1)
      throw std::invalid_argument(
          "DetectorParams: prefilter radius/passes must be >= 1");
  }
};

enum class PixelLabel : uint8_t { Flat, Textured, Candidate, BandEdge };

struct PixelLabelMap {
  int width = 0;
  int height = 0;
  std::vector<PixelLabel> labels;

  PixelLabelMap() = default;
  PixelLabelMap(int w, int h, PixelLabel fill = PixelLabel::Flat)
      : width(w), height(h),
        labels(static_cast<size_t>(w) * h, fill) {
    if (w < 1 || h < 1)
      throw std::invalid_argument("PixelLabelMap: dimensions must be >= 1");
  }

  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * width + j;
  }
  PixelLabel at(int i, int j) const { return labels[index(i, j)]; }
  PixelLabel& at(int i, int j) { return labels[index(i, j)]; }
};

struct GradientField {
  PrecisionFrame gx;
  PrecisionFrame gy;
  PrecisionFrame magnitude;
};

/// Edge-preserving smoothing that stabilizes detection on dithered or
/// speckled flats. Each pass replaces a pixel with its (2r+1)^2 box mean
/// only where the surrounding window (center excluded) spans at most
/// 2 luma levels; pixels near stronger structure pass through unchanged.
inline PrecisionFrame prefilter(const LumaFrame& frame,
                                const DetectorParams& params,
                                int threads = 1) {
  params.validate();
  if (frame.bit_depth != 8)
    throw std::invalid_argument("prefilter: expects an 8-bit frame");
  const int w = frame.width, h = frame.height;
  const int r = params.prefilter_radius;
  const double n = static_cast<double>(2 * r + 1) * (2 * r + 1);

  PrecisionFrame cur = promote(frame);
  PrecisionFrame next(w, h);
  for (int pass = 0; pass < params.prefilter_passes; ++pass) {
    parallel_rows(h, threads, [&](int i) {
      for (int j = 0; j < w; ++j) {
        double sum = 0.0;
        double lo = 1e300, hi = -1e300;
        for (int di = -r; di <= r; ++di) {
          for (int dj = -r; dj <= r; ++dj) {
            double v = sample_with_border(cur, i + di, j + dj);
            sum += v;
            if (di != 0 || dj != 0) {
              lo = std::min(lo, v);
              hi = std::max(hi, v);
            }
          }
        }
        next.at(i, j) = (hi - lo <= 2.0) ? sum / n : cur.at(i, j);
      }
    });
    std::swap(cur, next);
  }
  return cur;
}

/// Sobel gradient normalized by 1/8 so a unit-slope ramp has magnitude 1.
inline GradientField compute_gradient(const PrecisionFrame& frame,
                                      int threads = 1) {
  const int w = frame.width, h = frame.height;
  GradientField g{PrecisionFrame(w, h), PrecisionFrame(w, h),
                  PrecisionFrame(w, h)};
  parallel_rows(h, threads, [&](int i) {
    for (int j = 0; j < w; ++j) {
      auto s = [&](int di, int dj) {
        return sample_with_border(frame, i + di, j + dj);
      };
      double gx = (s(-1, 1) + 2.0 * s(0, 1) + s(1, 1)) -
                  (s(-1, -1) + 2.0 * s(0, -1) + s(1, -1));
      double gy = (s(1, -1) + 2.0 * s(1, 0) + s(1, 1)) -
                  (s(-1, -1) + 2.0 * s(-1, 0) + s(-1, 1));
      gx /= 8.0;
      gy /= 8.0;
      g.gx.at(i, j) = gx;
      g.gy.at(i, j) = gy;
      g.magnitude.at(i, j) = std::sqrt(gx * gx + gy * gy);
    }
  });
  return g;
}

inline PrecisionFrame gradient_magnitude(const PrecisionFrame& frame,
                                         int threads = 1) {
  return compute_gradient(frame, threads).magnitude;
}

/// Flat below t1, textured above t2, candidate banding in between.
inline PixelLabelMap classify(const PrecisionFrame& grad,
                              const DetectorParams& params) {
  params.validate();
  PixelLabelMap out(grad.width, grad.height);
  for (size_t k = 0; k < grad.samples.size(); ++k) {
    double g = grad.samples[k];
    out.labels[k] = g < params.t1   ? PixelLabel::Flat
                    : g > params.t2 ? PixelLabel::Textured
                                    : PixelLabel::Candidate;
  }
  return out;
}

namespace detail {

// Quantizes the gradient direction into one of four sectors and returns
// the two neighbor offsets along it. The first neighbor is the
// raster-earlier one.
inline std::pair<std::pair<int, int>, std::pair<int, int>> nms_neighbors(
    double gx, double gy) {
  const double ax = std::fabs(gx), ay = std::fabs(gy);
  constexpr double kTan22 = 0.41421356237309503;  // tan(22.5 deg)
  constexpr double kTan67 = 2.41421356237309515;  // tan(67.5 deg)
  if (ay <= kTan22 * ax) return {{0, -1}, {0, 1}};        // horizontal
  if (ay >= kTan67 * ax) return {{-1, 0}, {1, 0}};        // vertical
  if (gx * gy > 0.0) return {{-1, -1}, {1, 1}};           // main diagonal
  return {{-1, 1}, {1, -1}};                              // anti diagonal
}

}  // namespace detail

/// Non-maximum suppression along the quantized gradient direction thins
/// candidate ridges to single-pixel band edges. On equal-magnitude
/// plateaus the raster-earlier pixel wins (strict test against the
/// earlier neighbor, non-strict against the later one), so an ideal
/// two-pixel step ridge yields a one-pixel edge line. Neighbors outside
/// the frame never suppress.
inline PixelLabelMap extract_band_edges(const PixelLabelMap& labels,
                                        const GradientField& grad,
                                        int threads = 1) {
  if (labels.width != grad.magnitude.width ||
      labels.height != grad.magnitude.height)
    throw std::invalid_argument("extract_band_edges: dimension mismatch");
  const int w = labels.width, h = labels.height;
  PixelLabelMap out = labels;
  parallel_rows(h, threads, [&](int i) {
    for (int j = 0; j < w; ++j) {
      if (labels.at(i, j) != PixelLabel::Candidate) continue;
      double m = grad.magnitude.at(i, j);
      auto [a, b] = detail::nms_neighbors(grad.gx.at(i, j), grad.gy.at(i, j));
      auto mag_or = [&](std::pair<int, int> d, double miss) {
        int ni = i + d.first, nj = j + d.second;
        if (ni < 0 || ni >= h || nj < 0 || nj >= w) return miss;
        return grad.magnitude.at(ni, nj);
      };
      if (m > mag_or(a, -1.0) && m >= mag_or(b, -1.0))
        out.at(i, j) = PixelLabel::BandEdge;
    }
  });
  return out;
}

/// Label map rendered with the fixed diagnostic palette.
inline LumaFrame label_palette_frame(const PixelLabelMap& labels) {
  LumaFrame out(labels.width, labels.height, 8);
  for (size_t k = 0; k < labels.labels.size(); ++k) {
    switch (labels.labels[k]) {
      case PixelLabel::Flat: out.samples[k] = 0; break;
      case PixelLabel::Candidate: out.samples[k] = 96; break;
      case PixelLabel::BandEdge: out.samples[k] = 192; break;
      case PixelLabel::Textured: out.samples[k] = 255; break;
    }
  }
  return out;
}

}  // namespace adadeband
