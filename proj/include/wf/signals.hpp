// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wf/geometry.hpp"

namespace wf {

using cplx = std::complex<double>;

// Uniform isotropic sample grid. Shapes are powers of two (>= 8) so the
// transform path never needs padding decisions.
struct GridSpec {
  int dim = 1;
  Vec2 origin{0.0, 0.0};
  double spacing = 1.0;
  std::array<int, 2> shape{1, 1};  // shape[1] == 1 for dim 1

  static GridSpec make(int dim, const Vec2& origin, double spacing,
                       const std::array<int, 2>& shape);
  // "n=<int>[x<int>],dx=<real>[,origin=<real>[x<real>]]"; origin defaults to
  // centering the grid on 0.
  static GridSpec parse(const std::string& spec);
  std::string canonical() const;

  std::size_t count() const {
    return static_cast<std::size_t>(shape[0]) * (dim == 2 ? shape[1] : 1);
  }
  double coord(int axis, int index) const {
    return origin[axis] + index * spacing;
  }
  Vec2 node_coord(std::size_t lin) const;
  std::size_t lin(int i0, int i1) const {
    return static_cast<std::size_t>(i0) * (dim == 2 ? shape[1] : 1) + i1;
  }
  // Nearest node index along an axis (not range checked).
  int nearest_index(int axis, double x) const;
  double extent_min(int axis) const { return origin[axis]; }
  double extent_max(int axis) const {
    return origin[axis] + (shape[axis] - 1) * spacing;
  }

  bool operator==(const GridSpec&) const = default;
};

// Frequency lattice of the full DFT of a grid: spacing 2*pi/(N*dx) per axis,
// extent [-pi/dx, pi/dx). Linear indexing is row-major over bin indices
// kappa in [0, N); bin kappa maps to xi = (kappa - N/2) * dxi.
struct FreqLattice {
  int dim = 1;
  std::array<int, 2> shape{1, 1};
  Vec2 dxi{0.0, 0.0};

  static FreqLattice of(const GridSpec& grid);

  std::size_t count() const {
    return static_cast<std::size_t>(shape[0]) * (dim == 2 ? shape[1] : 1);
  }
  Vec2 xi(std::size_t lin) const;
  double xi_norm(std::size_t lin) const;
  double nyquist() const { return 0.5 * shape[0] * dxi[0]; }
  double cell_measure() const { return dim == 2 ? dxi[0] * dxi[1] : dxi[0]; }
};

class SampledField {
 public:
  SampledField(GridSpec grid, std::vector<cplx> samples);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> samples() const { return samples_; }
  const cplx& at(std::size_t lin) const { return samples_[lin]; }

 private:
  GridSpec grid_;
  std::vector<cplx> samples_;
};

// Closed-form test distributions with known wave front behaviour.
struct AnalyticSignal {
  enum class Kind { zero, delta, heaviside, half_plane, gaussian, plane_wave, chirp };
  Kind kind = Kind::zero;
  Vec2 x0{0.0, 0.0};      // delta / heaviside location, gaussian center
  Vec2 normal{1.0, 0.0};  // half_plane unit normal
  double offset = 0.0;    // half_plane: interface is x . normal = offset
  double width = 1.0;     // gaussian
  Vec2 eta{0.0, 0.0};     // plane_wave frequency
  double rate = 0.0;      // chirp

  // "delta:x0=0", "heaviside:x0=0", "half_plane:nx=1,ny=0,b=0",
  // "gaussian:center=0[x0],width=0.1", "plane_wave:eta=10[x0]",
  // "chirp:rate=40", "zero".
  static AnalyticSignal parse(const std::string& spec);
  std::string canonical() const;
};

// Pointwise sampling. The delta becomes a Kronecker spike of height
// spacing^-dim at the nearest node; jump interfaces take the value 1/2 on
// nodes within spacing/2 of the interface. Location parameters must sit
// inside the extent with a 10-node margin.
SampledField synth(const AnalyticSignal& entry, const GridSpec& grid);

// Pointwise product with the bump profile exp(a - a/(1 - |x-c|^2/R^2)); used
// to localize catalog fields before global-spectrum analysis.
SampledField apply_bump_cutoff(const SampledField& f, const Vec2& center,
                               double support_radius, double flat_order);

// Field file: one-line JSON header
//   {"dim":..,"origin":[..],"spacing":..,"shape":[..],"dtype":"complex128-le"}
// followed by raw little-endian complex128 payload, row-major.
void save_field(const SampledField& f, const std::string& path);
SampledField load_field(const std::string& path);

// CSV rows "x[,y],re,im" in row-major order; grid inferred and validated.
SampledField load_field_csv(const std::string& path);

}  // namespace wf
