// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/fft.hpp"

#include <cmath>

#include "wf/error.hpp"

namespace wf::fft {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_pow2(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0)
    fail(ErrorKind::invalid_argument, "FFT length must be a power of two");
}
}  // namespace

void transform(std::span<std::complex<double>> a, bool inverse) {
  const std::size_t n = a.size();
  check_pow2(n);
  if (n == 1) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // Tabulated roots keep the twiddles at one rounding each instead of a
  // running product.
  std::vector<std::complex<double>> roots(n / 2);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n / 2; ++k)
    roots[k] = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) /
                                   static_cast<double>(n));

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> w = roots[j * step];
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

void transform_2d(std::span<std::complex<double>> a, int n0, int n1,
                  bool inverse) {
  if (static_cast<std::size_t>(n0) * n1 != a.size())
    fail(ErrorKind::invalid_argument, "2-d FFT shape mismatch");
  for (int r = 0; r < n0; ++r)
    transform(a.subspan(static_cast<std::size_t>(r) * n1, n1), inverse);
  std::vector<std::complex<double>> col(n0);
  for (int c = 0; c < n1; ++c) {
    for (int r = 0; r < n0; ++r) col[r] = a[static_cast<std::size_t>(r) * n1 + c];
    transform(col, inverse);
    for (int r = 0; r < n0; ++r) a[static_cast<std::size_t>(r) * n1 + c] = col[r];
  }
}

std::vector<std::complex<double>> dft_reference(
    std::span<const std::complex<double>> a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      acc += a[j] * std::polar(1.0, sign * 2.0 * kPi *
                                        static_cast<double>(j * k % n) /
                                        static_cast<double>(n));
    out[k] = acc;
  }
  return out;
}

}  // namespace wf::fft
