#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "adadeband/detect.hpp"
#include "adadeband/frame.hpp"
#include "adadeband/parallel.hpp"
#include "adadeband/regions.hpp"

namespace adadeband {

/// Radius-map sentinel: the pixel is copied through, never averaged.
constexpr int32_t kNotFiltered = 0;

/// Per-pixel half-width of the smoothing window. Filtered pixels carry
/// radius >= 1; everything else is kNotFiltered.
struct RadiusMap {
  int width = 0;
  int height = 0;
  std::vector<int32_t> radius;

  RadiusMap() = default;
  RadiusMap(int w, int h)
      : width(w), height(h),
        radius(static_cast<size_t>(w) * h, kNotFiltered) {
    if (w < 1 || h < 1)
      throw std::invalid_argument("RadiusMap: dimensions must be >= 1");
  }

  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * width + j;
  }
  int32_t at(int i, int j) const { return radius[index(i, j)]; }
  int32_t& at(int i, int j) { return radius[index(i, j)]; }
  bool filtered(size_t k) const { return radius[k] != kNotFiltered; }
};

struct LpfParams {
  int median_radius = 2;

  void validate() const {
    if (median_radius < 0)
      throw std::invalid_argument("LpfParams: median_radius must be >= 0");
  }
};

/// Spatial extent of the smoothing window for one band: the band area
/// over the length of its framing edges, scaled by four when a single
/// edge encloses the band. Bands framed by no edge are not filtered.
inline std::optional<double> band_filter_length(const RegionIndex& regions,
                                                int band_id) {
  if (band_id < 1 || band_id > static_cast<int>(regions.bands.size()))
    throw std::invalid_argument("band_filter_length: unknown band id");
  const auto& adj = regions.band_adjacency[band_id - 1];
  if (adj.empty()) return std::nullopt;
  const double area =
      static_cast<double>(regions.bands[band_id - 1].area());
  if (adj.size() == 1) {
    double len = static_cast<double>(regions.edges[adj[0] - 1].length());
    return 4.0 * area / len;
  }
  double best = 0.0;
  for (int32_t e : adj) {
    double len = static_cast<double>(regions.edges[e - 1].length());
    best = std::max(best, area / len);
  }
  return best;
}

/// Window radius is half the length, floored at 1.
inline int radius_from_length(double l) {
  if (l < 0.0)
    throw std::invalid_argument("radius_from_length: negative length");
  return std::max(1, static_cast<int>(std::floor((l - 1.0) / 2.0)));
}

namespace detail {

// Prefix sums of the textured-pixel indicator, for O(1) window queries.
inline std::vector<int32_t> textured_prefix(const PixelLabelMap& labels) {
  const int w = labels.width, h = labels.height;
  std::vector<int32_t> sat(static_cast<size_t>(w + 1) * (h + 1), 0);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      int tp = labels.at(i, j) == PixelLabel::Textured ? 1 : 0;
      sat[(i + 1) * (w + 1) + (j + 1)] = tp + sat[i * (w + 1) + (j + 1)] +
                                         sat[(i + 1) * (w + 1) + j] -
                                         sat[i * (w + 1) + j];
    }
  }
  return sat;
}

inline int32_t textured_in_window(const std::vector<int32_t>& sat, int w,
                                  int h, int i, int j, int r) {
  int a = std::max(0, i - r), b = std::min(h - 1, i + r);
  int c = std::max(0, j - r), d = std::min(w - 1, j + r);
  return sat[(b + 1) * (w + 1) + (d + 1)] - sat[a * (w + 1) + (d + 1)] -
         sat[(b + 1) * (w + 1) + c] + sat[a * (w + 1) + c];
}

inline int32_t shrink_with_prefix(const std::vector<int32_t>& sat, int w,
                                  int h, int i, int j, int radius) {
  int r = radius;
  while (textured_in_window(sat, w, h, i, j, r) > 0) {
    if (r == 1) return kNotFiltered;
    r = std::max(1, r / 2);
  }
  return r;
}

}  // namespace detail

/// Recursively halves the window until it is free of textured pixels.
/// The starting radius is kept when its window is already clean; if even
/// the 3x3 window touches texture the pixel is excluded from filtering.
inline int32_t shrink_to_avoid_texture(const PixelLabelMap& labels, int i,
                                       int j, int radius) {
  if (radius < 1)
    throw std::invalid_argument("shrink_to_avoid_texture: radius must be >= 1");
  const int w = labels.width, h = labels.height;
  auto window_clean = [&](int r) {
    int a = std::max(0, i - r), b = std::min(h - 1, i + r);
    int c = std::max(0, j - r), d = std::min(w - 1, j + r);
    for (int y = a; y <= b; ++y)
      for (int x = c; x <= d; ++x)
        if (labels.at(y, x) == PixelLabel::Textured) return false;
    return true;
  };
  int r = radius;
  while (!window_clean(r)) {
    if (r == 1) return kNotFiltered;
    r = std::max(1, r / 2);
  }
  return r;
}

/// Per-pixel window radii for every banded pixel: the band's length
/// ratio, halved into a radius, shrunk away from texture, then median
/// denoised within each region. Band-edge pixels are filtered too --
/// they carry the step being smoothed -- and inherit the largest length
/// among the bands they frame. After the median pass radii are re-shrunk
/// so no window regains a textured pixel.
inline RadiusMap build_radius_map(const PixelLabelMap& labels,
                                  const RegionIndex& regions,
                                  const LpfParams& params, int threads = 1) {
  params.validate();
  if (labels.width != regions.width || labels.height != regions.height)
    throw std::invalid_argument("build_radius_map: dimension mismatch");
  const int w = labels.width, h = labels.height;

  std::vector<std::optional<double>> band_len(regions.bands.size());
  for (size_t b = 0; b < regions.bands.size(); ++b)
    band_len[b] = band_filter_length(regions, static_cast<int>(b) + 1);

  std::vector<std::optional<double>> edge_len(regions.edges.size());
  for (size_t e = 0; e < regions.edges.size(); ++e) {
    std::optional<double> best;
    for (int32_t b : regions.edge_adjacency[e]) {
      const auto& l = band_len[b - 1];
      if (l && (!best || *l > *best)) best = l;
    }
    edge_len[e] = best;
  }

  const auto sat = detail::textured_prefix(labels);

  // Region key keeps the median window from mixing radii across region
  // boundaries: positive for bands, negative for edges, 0 outside.
  std::vector<int32_t> key(static_cast<size_t>(w) * h, 0);
  RadiusMap radii(w, h);
  parallel_rows(h, threads, [&](int i) {
    for (int j = 0; j < w; ++j) {
      size_t p = static_cast<size_t>(i) * w + j;
      std::optional<double> l;
      if (int32_t b = regions.band_ids[p]; b > 0) {
        l = band_len[b - 1];
        key[p] = b;
      } else if (int32_t e = regions.edge_ids[p]; e > 0) {
        l = edge_len[e - 1];
        key[p] = -e;
      }
      if (!l) continue;
      radii.radius[p] = detail::shrink_with_prefix(
          sat, w, h, i, j, radius_from_length(*l));
    }
  });

  if (params.median_radius > 0) {
    const int m = params.median_radius;
    RadiusMap denoised = radii;
    parallel_rows(h, threads, [&](int i) {
      std::vector<int32_t> window;
      for (int j = 0; j < w; ++j) {
        size_t p = static_cast<size_t>(i) * w + j;
        if (!radii.filtered(p)) continue;
        window.clear();
        for (int di = -m; di <= m; ++di) {
          int ni = i + di;
          if (ni < 0 || ni >= h) continue;
          for (int dj = -m; dj <= m; ++dj) {
            int nj = j + dj;
            if (nj < 0 || nj >= w) continue;
            size_t q = static_cast<size_t>(ni) * w + nj;
            if (radii.filtered(q) && key[q] == key[p])
              window.push_back(radii.radius[q]);
          }
        }
        // Lower middle for even counts.
        size_t mid = (window.size() - 1) / 2;
        std::nth_element(window.begin(), window.begin() + mid, window.end());
        int32_t med = window[mid];
        denoised.radius[p] =
            detail::shrink_with_prefix(sat, w, h, i, j, med);
      }
    });
    radii = std::move(denoised);
  }
  return radii;
}

namespace detail {

// Summed-area table over the frame, (w+1)x(h+1), for O(1) box sums.
inline std::vector<double> frame_prefix(const PrecisionFrame& f) {
  const int w = f.width, h = f.height;
  std::vector<double> sat(static_cast<size_t>(w + 1) * (h + 1), 0.0);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      sat[(i + 1) * (w + 1) + (j + 1)] =
          f.at(i, j) + sat[i * (w + 1) + (j + 1)] +
          sat[(i + 1) * (w + 1) + j] - sat[i * (w + 1) + j];
    }
  }
  return sat;
}

inline double block_sum(const std::vector<double>& sat, int w, int a, int b,
                        int c, int d) {
  return sat[(b + 1) * (w + 1) + (d + 1)] - sat[a * (w + 1) + (d + 1)] -
         sat[(b + 1) * (w + 1) + c] + sat[a * (w + 1) + c];
}

// Mean of the (2r+1)^2 replicate-padded window centered at (i, j).
// Out-of-frame rows and columns collapse onto the border with
// multiplicity, so the sum factors into one interior block plus weighted
// border strips and corners.
inline double replicate_window_mean(const std::vector<double>& sat,
                                    const PrecisionFrame& f, int i, int j,
                                    int r) {
  const int w = f.width, h = f.height;
  int a = std::max(0, i - r), b = std::min(h - 1, i + r);
  int c = std::max(0, j - r), d = std::min(w - 1, j + r);
  double et = a - (i - r);       // rows clamped to the top border
  double eb = (i + r) - b;       // rows clamped to the bottom border
  double el = c - (j - r);
  double er = (j + r) - d;
  double total = block_sum(sat, w, a, b, c, d);
  if (el > 0) total += el * block_sum(sat, w, a, b, 0, 0);
  if (er > 0) total += er * block_sum(sat, w, a, b, w - 1, w - 1);
  if (et > 0) {
    double row = block_sum(sat, w, 0, 0, c, d);
    if (el > 0) row += el * f.at(0, 0);
    if (er > 0) row += er * f.at(0, w - 1);
    total += et * row;
  }
  if (eb > 0) {
    double row = block_sum(sat, w, h - 1, h - 1, c, d);
    if (el > 0) row += el * f.at(h - 1, 0);
    if (er > 0) row += er * f.at(h - 1, w - 1);
    total += eb * row;
  }
  double n = static_cast<double>(2 * r + 1) * (2 * r + 1);
  return total / n;
}

}  // namespace detail

/// Size-varying moving average: each filtered pixel becomes the mean of
/// its (2h+1)^2 window of the input frame (replicate borders); excluded
/// pixels are copied. Reads only the input, never its own output.
inline PrecisionFrame apply_adaptive_lpf(const PrecisionFrame& frame,
                                         const RadiusMap& radii,
                                         int threads = 1) {
  if (frame.width != radii.width || frame.height != radii.height)
    throw std::invalid_argument("apply_adaptive_lpf: dimension mismatch");
  const int w = frame.width, h = frame.height;
  const auto sat = detail::frame_prefix(frame);
  PrecisionFrame out(w, h);
  parallel_rows(h, threads, [&](int i) {
    for (int j = 0; j < w; ++j) {
      int32_t r = radii.at(i, j);
      out.at(i, j) = (r == kNotFiltered)
                         ? frame.at(i, j)
                         : detail::replicate_window_mean(sat, frame, i, j, r);
    }
  });
  return out;
}

/// Radius map rendered for diagnostics: radius clamped to 255,
/// unfiltered pixels black.
inline LumaFrame radius_palette_frame(const RadiusMap& radii) {
  LumaFrame out(radii.width, radii.height, 8);
  for (size_t k = 0; k < radii.radius.size(); ++k)
    out.samples[k] = static_cast<uint16_t>(
        std::min<int32_t>(radii.radius[k], 255));
  return out;
}

}  // namespace adadeband
