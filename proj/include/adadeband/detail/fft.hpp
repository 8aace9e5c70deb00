#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace adadeband::detail {

// Iterative radix-2 Cooley-Tukey; n must be a power of two. The inverse
// transform divides by n.
inline void fft_1d(std::complex<double>* a, int n, bool invert) {
  if (n <= 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_1d: length must be a power of two");
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double pi = 3.14159265358979323846;
  for (int len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * pi / len * (invert ? -1.0 : 1.0);
    std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (invert)
    for (int i = 0; i < n; ++i) a[i] /= n;
}

// In-place 2-D transform of an n x n row-major grid.
inline void fft_2d(std::vector<std::complex<double>>& grid, int n,
                   bool invert) {
  if (grid.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("fft_2d: grid size mismatch");
  for (int i = 0; i < n; ++i) fft_1d(grid.data() + static_cast<size_t>(i) * n, n, invert);
  std::vector<std::complex<double>> col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = grid[static_cast<size_t>(i) * n + j];
    fft_1d(col.data(), n, invert);
    for (int i = 0; i < n; ++i) grid[static_cast<size_t>(i) * n + j] = col[i];
  }
}

inline int next_pow2(int x) {
  int n = 1;
  while (n < x) n <<= 1;
  return n;
}

}  // namespace adadeband::detail
