// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wf::fft {

// In-place iterative radix-2 transform; length must be a power of two.
// Forward convention: X[k] = sum_j x[j] e^{-2 pi i j k / n}. No scaling on
// either direction (the caller owns measure factors).
void transform(std::span<std::complex<double>> a, bool inverse);

// Row-major n0 x n1 transform (rows then columns).
void transform_2d(std::span<std::complex<double>> a, int n0, int n1,
                  bool inverse);

// O(n^2) direct summation with the same convention; the serial reference
// the fast path is tested against.
std::vector<std::complex<double>> dft_reference(
    std::span<const std::complex<double>> a, bool inverse);

}  // namespace wf::fft
