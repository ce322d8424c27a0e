// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wf/geometry.hpp"
#include "wf/norms.hpp"
#include "wf/signals.hpp"
#include "wf/stft.hpp"

namespace wf {

// One (point, direction) membership query. The compact neighbourhood K is
// the axis box [x0 - K_radius, x0 + K_radius]; center_count centers per axis
// span it and the verdict takes the worst case over them.
struct RegularityQuery {
  Vec2 x0{0.0, 0.0};
  Vec2 direction{1.0, 0.0};       // unit vector
  double k_radius = 0.0;          // 0: default 8 dx
  double half_angle = 0.2617993877991494;  // 15 degrees; ignored in dim 1
  WindowParams window;
  NormBackend backend = NormBackend::sobolev(0.0);
  int center_count = 3;           // odd, >= 3
  RadiusSchedule schedule;        // empty: dyadic(4, 0.9 * nyquist)
  double epsilon = 0.05;
  bool refine = false;            // retry singular verdicts at half the angle
};

struct WavefrontCell {
  int x_index = 0;
  int direction_index = 0;
  Vec2 x{0.0, 0.0};
  Vec2 direction{1.0, 0.0};
  double score = 0.0;  // sup of tail ratios over the K centers
  Decision decision = Decision::inconclusive;
};

struct CenterDetail {
  Vec2 x{0.0, 0.0};
  double tail_ratio = 0.0;
  Decision decision = Decision::inconclusive;
};

struct PointResult {
  WavefrontCell cell;
  std::vector<CenterDetail> centers;
  bool refined = false;
};

PointResult test_point(const SampledField& f, const RegularityQuery& query);

// Full (x-grid x direction-grid) sweep. x positions are the safe-interior
// nodes congruent (mod stride) to the node nearest coordinate 0, so lattice
// shifts of the field shift the report.
struct SweepConfig {
  int stride = 16;      // node stride of the x grid
  int directions = 16;  // direction count (must be 2 in dim 1)
  double half_angle = 0.2617993877991494;
  double k_radius = 0.0;
  WindowParams window;
  NormBackend backend = NormBackend::sobolev(0.0);
  int center_count = 3;
  RadiusSchedule schedule;
  double epsilon = 0.05;
  bool refine = false;
  int threads = 0;
};

struct WavefrontReport {
  int dim = 1;
  std::vector<Vec2> x_positions;
  std::vector<std::array<int, 2>> x_nodes;
  DirectionGrid directions;
  std::vector<WavefrontCell> cells;  // row-major: x index major, direction minor
  std::vector<int> sing_supp;        // x indices owning a singular cell
};

// OpenMP fast path: per unique center, one transform reduced to per-
// direction partial power tables; bit-identical to sweep_reference.
WavefrontReport sweep(const SampledField& f, const SweepConfig& config);

// Serial reference: one test_point per cell, kept for testing and for the
// benchmark comparison.
WavefrontReport sweep_reference(const SampledField& f,
                                const SweepConfig& config);

std::vector<int> sing_supp(const WavefrontReport& report);

// Global frequency-direction analysis of a compactly supported field: one
// full spectrum, one membership score per direction. The field must vanish
// (relative amplitude <= 1e-12) outside the central half of the grid.
struct DirectionDecision {
  Vec2 direction{1.0, 0.0};
  double angle = 0.0;
  double score = 0.0;
  Decision decision = Decision::inconclusive;
};

std::vector<DirectionDecision> sigma_global(const SampledField& f,
                                            const NormBackend& backend,
                                            const DirectionGrid& dirs,
                                            double half_angle,
                                            const RadiusSchedule& schedule,
                                            double epsilon);

// Finite-difference continuity surrogate:
// ||theta_cone (V(x,.) - V(x',.))||_E / |x - x'| for nearby centers.
double lipschitz_check(const SampledField& f, const Window& window,
                       const Cone& cone, const NormBackend& backend,
                       const Vec2& x, const Vec2& x_prime, double radius);

}  // namespace wf
