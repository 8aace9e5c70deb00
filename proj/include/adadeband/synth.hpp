#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adadeband/frame.hpp"
#include "adadeband/metrics.hpp"
#include "adadeband/pipeline.hpp"
#include "adadeband/quantize.hpp"

namespace adadeband {

enum class SynthPattern { LinearRampH, LinearRampV, RadialVignette, CornerGradient };

struct InsetRect {
  int x = 0, y = 0, w = 0, h = 0;
};

/// Synthetic gradient with optional coarse quantization, the desk-scale
/// stand-in for codec-induced banding.
struct SynthSpec {
  int width = 256;
  int height = 256;
  SynthPattern pattern = SynthPattern::LinearRampH;
  double low = 0.0;
  double high = 255.0;
  int band_step = 16;
  std::optional<InsetRect> texture_inset;
  uint64_t seed = 1;

  void validate() const {
    if (width < 1 || height < 1)
      throw std::invalid_argument("SynthSpec: dimensions must be >= 1");
    if (!(low >= 0.0 && low < high && high <= 255.0))
      throw std::invalid_argument("SynthSpec: need 0 <= low < high <= 255");
    if (band_step < 1)
      throw std::invalid_argument("SynthSpec: band_step must be >= 1");
    if (texture_inset) {
      const auto& r = *texture_inset;
      if (r.w < 1 || r.h < 1 || r.x < 0 || r.y < 0 || r.x + r.w > width ||
          r.y + r.h > height)
        throw std::invalid_argument("SynthSpec: inset outside frame");
    }
  }
};

namespace detail {

// 2x2-block checkerboard; the highest spatial frequency the gradient
// operator responds to (a 1x1 checker is invisible to Sobel), with
// contrast strong enough to classify as texture.
constexpr double kInsetDark = 30.0;
constexpr double kInsetLight = 225.0;

inline double checker_value(int x_rel, int y_rel) {
  return (((x_rel / 2) + (y_rel / 2)) % 2 == 0) ? kInsetDark : kInsetLight;
}

}  // namespace detail

/// Continuous ground-truth field for the requested pattern.
inline PrecisionFrame synth_ideal(const SynthSpec& spec) {
  spec.validate();
  const int w = spec.width, h = spec.height;
  const double lo = spec.low, hi = spec.high;
  PrecisionFrame out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double v = lo;
      switch (spec.pattern) {
        case SynthPattern::LinearRampH:
          v = lo + (hi - lo) * (w > 1 ? static_cast<double>(j) / (w - 1) : 0.0);
          break;
        case SynthPattern::LinearRampV:
          v = lo + (hi - lo) * (h > 1 ? static_cast<double>(i) / (h - 1) : 0.0);
          break;
        case SynthPattern::RadialVignette: {
          double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
          double r = std::sqrt((j - cx) * (j - cx) + (i - cy) * (i - cy));
          double rc = std::sqrt(cx * cx + cy * cy);
          v = rc > 0.0 ? hi - (hi - lo) * (r / rc) : hi;
          break;
        }
        case SynthPattern::CornerGradient: {
          double span = static_cast<double>(w - 1) + (h - 1);
          v = span > 0.0 ? lo + (hi - lo) * (i + j) / span : lo;
          break;
        }
      }
      out.at(i, j) = v;
    }
  }
  if (spec.texture_inset) {
    const auto& r = *spec.texture_inset;
    for (int i = 0; i < r.h; ++i)
      for (int j = 0; j < r.w; ++j)
        out.at(r.y + i, r.x + j) = detail::checker_value(j, i);
  }
  return out;
}

/// The ideal field quantized with step band_step onto band centers,
/// emulating banding from coarse compression. A step of 1 reduces to
/// plain rounding (no extra banding).
inline LumaFrame synth_banded(const SynthSpec& spec) {
  spec.validate();
  PrecisionFrame ideal = synth_ideal(spec);
  LumaFrame out(spec.width, spec.height, 8);
  const double step = static_cast<double>(spec.band_step);
  Quantizer q;
  for (size_t k = 0; k < ideal.samples.size(); ++k) {
    double v = ideal.samples[k];
    double banded =
        spec.band_step == 1 ? v : std::floor(v / step) * step + step / 2.0;
    out.samples[k] = q.quantize(banded);
  }
  return out;
}

struct SweepRow {
  int band_step = 0;
  double density_before = 0.0;
  double density_after = 0.0;
  double psnr_vs_ideal_before = 0.0;
  double psnr_vs_ideal_after = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  std::string to_csv() const {
    std::ostringstream os;
    os << "band_step,density_before,density_after,"
          "psnr_vs_ideal_before,psnr_vs_ideal_after\n";
    auto num = [](double v) {
      std::ostringstream o;
      if (std::isinf(v))
        o << "inf";
      else
        o << v;
      return o.str();
    };
    for (const auto& r : rows) {
      os << r.band_step << ',' << num(r.density_before) << ','
         << num(r.density_after) << ',' << num(r.psnr_vs_ideal_before) << ','
         << num(r.psnr_vs_ideal_after) << '\n';
    }
    return os.str();
  }
};

/// Quantization sweep: for each step, synthesize banding, deband with
/// one fixed configuration, and record edge density and PSNR against
/// the continuous ideal before and after.
inline SweepResult run_sweep(const SynthSpec& spec,
                             const std::vector<int>& steps,
                             const PipelineConfig& config) {
  if (steps.empty())
    throw std::invalid_argument("run_sweep: steps must be non-empty");
  SweepResult out;
  for (int step : steps) {
    SynthSpec s = spec;
    s.band_step = step;
    LumaFrame banded = synth_banded(s);
    LumaFrame ideal8 = quantize_frame(synth_ideal(s), Quantizer{},
                                      config.threads);
    FrameDebandResult res = deband_frame(banded, config, 0);
    SweepRow row;
    row.band_step = step;
    row.density_before =
        band_edge_density(banded, config.detector, config.threads);
    row.density_after =
        band_edge_density(res.output, config.detector, config.threads);
    row.psnr_vs_ideal_before = psnr(banded, ideal8);
    row.psnr_vs_ideal_after = psnr(res.output, ideal8);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace adadeband
