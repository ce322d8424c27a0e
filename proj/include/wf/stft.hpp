// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "wf/signals.hpp"

namespace wf {

// Compactly supported bump window chi(t) = exp(a - a/(1 - |t/R|^2)) for
// |t| < R, zero outside; chi(0) = 1, radially even. Sampled on the field
// grid as a (2m+1)^dim patch where m is the largest node offset with
// |u| dx < R.
struct Window {
  double support_radius = 0.0;  // R
  double flat_order = 2.0;      // a
  double spacing = 0.0;         // dx of the grid the samples live on
  int dim = 1;
  int halfwidth = 0;  // m
  std::vector<double> samples;  // patch, row-major, offset u -> index u + m

  double at_offset(int u0, int u1) const {
    const int w = 2 * halfwidth + 1;
    return samples[static_cast<std::size_t>(u0 + halfwidth) *
                       (dim == 2 ? w : 1) +
                   (dim == 2 ? u1 + halfwidth : 0)];
  }
  // Analytic profile at radius r (shared definition, exact at samples).
  double profile(double r) const;
  double max_abs() const { return 1.0; }
  // Max sampled finite-difference slope, for continuity diagnostics.
  double lipschitz() const;
};

Window bump_window(double support_radius, double flat_order,
                   const GridSpec& grid);

// "bump:R=<real>,a=<real>"
Window parse_window_spec(const std::string& spec, const GridSpec& grid);
std::string window_spec_string(const Window& w);

struct WindowParams {
  double support_radius = 0.1;
  double flat_order = 2.0;
  static WindowParams parse(const std::string& spec);
  std::string canonical() const;
};

// V(x, xi) on (centers x frequency lattice), values row-major by center
// then frequency bin.
struct StftVolume {
  int dim = 1;
  std::vector<Vec2> centers;            // snapped center coordinates
  std::vector<std::array<int, 2>> center_nodes;
  FreqLattice lattice;
  std::vector<cplx> values;

  std::span<const cplx> slice(std::size_t center) const {
    return std::span<const cplx>(values).subspan(center * lattice.count(),
                                                 lattice.count());
  }
};

struct StftOptions {
  int threads = 0;  // 0: runtime default; centers are independent units
  // The phase convention references absolute coordinates t, so V(x, .) is
  // the transform of t -> f(t) conj(chi(t-x)). Turning this off reproduces
  // the center-local phase bug as a loud negative control for validation.
  bool absolute_phase = true;
};

// V(x, xi_k) = dx^dim sum_t e^{-i t.xi_k} f(t) conj(chi(t - x)) evaluated by
// a fast transform of the windowed slice. Centers snap to grid nodes; a
// window overrunning the grid boundary at any center is an error.
StftVolume compute_stft(const SampledField& f, const Window& window,
                        std::span<const Vec2> centers,
                        const StftOptions& opt = {});

// One validated center node, slice written into caller storage of lattice
// size; the building block compute_stft and streaming consumers share.
void stft_center_slice(const SampledField& f, const Window& window,
                       const std::array<int, 2>& center_node,
                       bool absolute_phase, std::span<cplx> out);

// Direct-summation serial reference, same contract, no FFT and no shared
// code with the fast path beyond the window patch itself.
StftVolume compute_stft_reference(const SampledField& f, const Window& window,
                                  std::span<const Vec2> centers);

// Closed forms for delta and plane_wave entries (engine-validation oracle).
// The plane-wave path integrates the analytic profile at 16x the grid
// resolution; it never touches the transform code.
cplx closed_form_stft(const AnalyticSignal& entry, const Window& window,
                      const Vec2& x, const Vec2& xi);

// Full-grid spectrum with the same absolute-coordinate convention:
// G(xi_k) = dx^dim sum_t e^{-i t.xi_k} f(t), on FreqLattice::of(f.grid()).
std::vector<cplx> absolute_spectrum(const SampledField& f);

// Volume dump: one-line JSON header {dim, centers, freq_shape, freq_spacing,
// dtype} + little-endian complex128 payload (center-major).
void save_stft(const StftVolume& v, const std::string& path);

}  // namespace wf
