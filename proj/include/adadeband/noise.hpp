#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adadeband/detail/fft.hpp"
#include "adadeband/detail/rng.hpp"
#include "adadeband/frame.hpp"
#include "adadeband/parallel.hpp"

namespace adadeband {

/// Dither noise families. All four are matched to the variance of the
/// uniform family, amplitude^2 / 3, so they cover the quantization step
/// equally.
enum class NoiseKind { Uniform, GaussianBlurredUniform, PowerHalf, Pink };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::GaussianBlurredUniform;
  double amplitude = 2.0;   // uniform support is [-amplitude, +amplitude]
  double blur_sigma = 1.0;  // GaussianBlurredUniform only
  uint64_t seed = 1;

  void validate() const {
    if (!(amplitude > 0.0))
      throw std::invalid_argument("NoiseSpec: amplitude must be > 0");
    if (!(blur_sigma > 0.0))
      throw std::invalid_argument("NoiseSpec: blur_sigma must be > 0");
  }
};

namespace detail {

inline PrecisionFrame uniform_field(const NoiseSpec& spec, int w, int h,
                                    int frame_index, int threads) {
  PrecisionFrame out(w, h);
  parallel_rows(h, threads, [&](int y) {
    for (int x = 0; x < w; ++x) {
      uint64_t bits = hash_coords(spec.seed, 0, frame_index, y, x);
      out.at(y, x) = (2.0 * unit_double(bits) - 1.0) * spec.amplitude;
    }
  });
  return out;
}

// Sample mean and population standard deviation, accumulated in a fixed
// order so results do not depend on the thread count.
inline std::pair<double, double> mean_stddev(const PrecisionFrame& f) {
  double mean = 0.0;
  for (double v : f.samples) mean += v;
  mean /= static_cast<double>(f.samples.size());
  double var = 0.0;
  for (double v : f.samples) var += (v - mean) * (v - mean);
  var /= static_cast<double>(f.samples.size());
  return {mean, std::sqrt(var)};
}

inline PrecisionFrame gaussian_blur(const PrecisionFrame& in, double sigma,
                                    int threads) {
  const int w = in.width, h = in.height;
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * r + 1);
  double ksum = 0.0;
  for (int k = -r; k <= r; ++k) {
    kernel[k + r] = std::exp(-0.5 * k * k / (sigma * sigma));
    ksum += kernel[k + r];
  }
  for (double& v : kernel) v /= ksum;

  PrecisionFrame tmp(w, h), out(w, h);
  parallel_rows(h, threads, [&](int y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -r; k <= r; ++k)
        acc += kernel[k + r] * sample_with_border(in, y, x + k);
      tmp.at(y, x) = acc;
    }
  });
  parallel_rows(h, threads, [&](int y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -r; k <= r; ++k)
        acc += kernel[k + r] * sample_with_border(tmp, y + k, x);
      out.at(y, x) = acc;
    }
  });
  return out;
}

// Zero-centers the field and scales its sample standard deviation to
// target.
inline void center_and_scale(PrecisionFrame& f, double target) {
  auto [mean, sd] = mean_stddev(f);
  if (sd <= 0.0) {
    for (double& v : f.samples) v = 0.0;
    return;
  }
  double s = target / sd;
  for (double& v : f.samples) v = (v - mean) * s;
}

// Gaussian white field shaped so its power spectrum falls off as
// f^-spectral_power, synthesized on the enclosing power-of-two grid and
// cropped. The DC term is removed before inversion.
inline PrecisionFrame spectral_field(const NoiseSpec& spec, int w, int h,
                                     int frame_index, double spectral_power) {
  const int n = next_pow2(std::max(w, h));
  std::vector<std::complex<double>> grid(static_cast<size_t>(n) * n);
  const double two_pi = 6.28318530717958647692;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      double u1 = unit_double_open(
          hash_coords(spec.seed, 1, frame_index, y, x));
      double u2 =
          unit_double(hash_coords(spec.seed, 2, frame_index, y, x));
      double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
      grid[static_cast<size_t>(y) * n + x] = z;
    }
  }
  fft_2d(grid, n, false);
  // Power ~ f^-p means the amplitude gain is f^(-p/2).
  const double amp_exp = -0.5 * spectral_power;
  for (int ky = 0; ky < n; ++ky) {
    int fy = std::min(ky, n - ky);
    for (int kx = 0; kx < n; ++kx) {
      int fx = std::min(kx, n - kx);
      size_t idx = static_cast<size_t>(ky) * n + kx;
      if (fx == 0 && fy == 0) {
        grid[idx] = 0.0;
        continue;
      }
      double f = std::sqrt(static_cast<double>(fx) * fx +
                           static_cast<double>(fy) * fy);
      grid[idx] *= std::pow(f, amp_exp);
    }
  }
  fft_2d(grid, n, true);
  PrecisionFrame out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.at(y, x) = grid[static_cast<size_t>(y) * n + x].real();
  return out;
}

}  // namespace detail

/// Deterministic noise image for dithering. The same (spec, dimensions,
/// frame_index) always yields the same field, at any thread count.
inline PrecisionFrame generate_noise(const NoiseSpec& spec, int width,
                                     int height, int frame_index,
                                     int threads = 1) {
  spec.validate();
  if (width < 1 || height < 1)
    throw std::invalid_argument("generate_noise: dimensions must be >= 1");
  const double matched_sd = spec.amplitude / std::sqrt(3.0);
  switch (spec.kind) {
    case NoiseKind::Uniform:
      return detail::uniform_field(spec, width, height, frame_index, threads);
    case NoiseKind::GaussianBlurredUniform: {
      PrecisionFrame base =
          detail::uniform_field(spec, width, height, frame_index, threads);
      auto [mean0, sd0] = detail::mean_stddev(base);
      (void)mean0;
      PrecisionFrame out =
          detail::gaussian_blur(base, spec.blur_sigma, threads);
      // Blurring shrinks the variance; restore the pre-blur deviation so
      // the dither still spans the quantization step.
      detail::center_and_scale(out, sd0);
      return out;
    }
    case NoiseKind::PowerHalf: {
      PrecisionFrame out =
          detail::spectral_field(spec, width, height, frame_index, 0.5);
      detail::center_and_scale(out, matched_sd);
      return out;
    }
    case NoiseKind::Pink: {
      PrecisionFrame out =
          detail::spectral_field(spec, width, height, frame_index, 1.0);
      detail::center_and_scale(out, matched_sd);
      return out;
    }
  }
  throw std::logic_error("generate_noise: unreachable");
}

}  // namespace adadeband
