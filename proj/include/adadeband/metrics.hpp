#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "adadeband/detect.hpp"
#include "adadeband/frame.hpp"

namespace adadeband {

constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

/// Peak signal-to-noise ratio in dB against an 8-bit peak; identical
/// frames report the infinite sentinel.
inline double psnr(const LumaFrame& a, const LumaFrame& b) {
  require_same_shape(a, b, "psnr");
  if (a.bit_depth != 8 || b.bit_depth != 8)
    throw FormatError("psnr: expects 8-bit frames");
  double mse = 0.0;
  for (size_t k = 0; k < a.samples.size(); ++k) {
    double d = static_cast<double>(a.samples[k]) - b.samples[k];
    mse += d * d;
  }
  mse /= static_cast<double>(a.samples.size());
  if (mse == 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 255, mean-pooled over valid window centers.
inline double ssim(const LumaFrame& a, const LumaFrame& b) {
  require_same_shape(a, b, "ssim");
  if (a.bit_depth != 8 || b.bit_depth != 8)
    throw FormatError("ssim: expects 8-bit frames");
  if (a.width < 11 || a.height < 11)
    throw FormatError("ssim: frames must be at least 11x11");

  constexpr int kHalf = 5;
  double weight[11][11];
  double wsum = 0.0;
  for (int dy = -kHalf; dy <= kHalf; ++dy)
    for (int dx = -kHalf; dx <= kHalf; ++dx) {
      double g = std::exp(-(dy * dy + dx * dx) / (2.0 * 1.5 * 1.5));
      weight[dy + kHalf][dx + kHalf] = g;
      wsum += g;
    }
  for (auto& row : weight)
    for (double& v : row) v /= wsum;

  const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  const double c2 = (0.03 * 255.0) * (0.03 * 255.0);

  double pooled = 0.0;
  long count = 0;
  for (int i = kHalf; i < a.height - kHalf; ++i) {
    for (int j = kHalf; j < a.width - kHalf; ++j) {
      double mx = 0.0, my = 0.0, mxx = 0.0, myy = 0.0, mxy = 0.0;
      for (int dy = -kHalf; dy <= kHalf; ++dy) {
        for (int dx = -kHalf; dx <= kHalf; ++dx) {
          double wgt = weight[dy + kHalf][dx + kHalf];
          double x = a.at(i + dy, j + dx);
          double y = b.at(i + dy, j + dx);
          mx += wgt * x;
          my += wgt * y;
          mxx += wgt * x * x;
          myy += wgt * y * y;
          mxy += wgt * x * y;
        }
      }
      double vx = mxx - mx * mx;
      double vy = myy - my * my;
      double cov = mxy - mx * my;
      double val = ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
                   ((mx * mx + my * my + c1) * (vx + vy + c2));
      pooled += val;
      ++count;
    }
  }
  return pooled / static_cast<double>(count);
}

/// Band-edge pixels per megapixel, from the detection front end. A
/// cheap banding-severity proxy: debanding should drive it down.
inline double band_edge_density(const LumaFrame& frame,
                                const DetectorParams& params = {},
                                int threads = 1) {
  PrecisionFrame pre = prefilter(frame, params, threads);
  GradientField grad = compute_gradient(pre, threads);
  PixelLabelMap labels = classify(grad.magnitude, params);
  labels = extract_band_edges(labels, grad, threads);
  long edges = 0;
  for (PixelLabel l : labels.labels)
    if (l == PixelLabel::BandEdge) ++edges;
  return 1e6 * static_cast<double>(edges) /
         (static_cast<double>(frame.width) * frame.height);
}

struct FrameQuality {
  double psnr_db = 0.0;
  double ssim = 0.0;
  double band_edge_density = 0.0;
};

/// Per-frame quality rows plus mean/std aggregates. Serializes with the
/// fixed field names psnr_db, ssim, band_edge_density, frames, mean, std.
/// Non-finite values (the infinite-PSNR sentinel) serialize as null.
struct QualityReport {
  std::vector<FrameQuality> frames;

  void add(FrameQuality q) { frames.push_back(q); }

  FrameQuality mean() const {
    check_nonempty();
    FrameQuality m;
    for (const auto& f : frames) {
      m.psnr_db += f.psnr_db;
      m.ssim += f.ssim;
      m.band_edge_density += f.band_edge_density;
    }
    double n = static_cast<double>(frames.size());
    m.psnr_db /= n;
    m.ssim /= n;
    m.band_edge_density /= n;
    return m;
  }

  FrameQuality stddev() const {
    check_nonempty();
    FrameQuality m = mean(), s;
    for (const auto& f : frames) {
      s.psnr_db += (f.psnr_db - m.psnr_db) * (f.psnr_db - m.psnr_db);
      s.ssim += (f.ssim - m.ssim) * (f.ssim - m.ssim);
      s.band_edge_density += (f.band_edge_density - m.band_edge_density) *
                             (f.band_edge_density - m.band_edge_density);
    }
    double n = static_cast<double>(frames.size());
    s.psnr_db = std::sqrt(s.psnr_db / n);
    s.ssim = std::sqrt(s.ssim / n);
    s.band_edge_density = std::sqrt(s.band_edge_density / n);
    return s;
  }

  nlohmann::ordered_json to_json() const {
    check_nonempty();
    auto entry = [](const FrameQuality& q) {
      nlohmann::ordered_json j;
      j["psnr_db"] = q.psnr_db;
      j["ssim"] = q.ssim;
      j["band_edge_density"] = q.band_edge_density;
      return j;
    };
    nlohmann::ordered_json j;
    j["frames"] = nlohmann::ordered_json::array();
    for (const auto& f : frames) j["frames"].push_back(entry(f));
    j["mean"] = entry(mean());
    j["std"] = entry(stddev());
    return j;
  }

 private:
  void check_nonempty() const {
    if (frames.empty())
      throw std::logic_error("QualityReport: no frames recorded");
  }
};

}  // namespace adadeband
