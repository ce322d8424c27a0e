// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "wf/norms.hpp"
#include "wf/signals.hpp"

namespace wf {

// Textbook wave front set of a catalog entry, filtered by what the backend
// can resolve. Combinations without a defensible closed-form answer raise
// oracle_unavailable rather than guessing.
struct WavefrontOracle {
  bool empty = true;
  enum class Region { none, point, line };
  Region region = Region::none;
  Vec2 point{0.0, 0.0};
  Vec2 line_normal{1.0, 0.0};
  double line_offset = 0.0;
  bool all_directions = false;
  std::vector<Vec2> directions;  // used when !all_directions
};

// Supported: polynomial backends for every catalog entry (delta is singular
// iff s >= -d/q, jump interfaces iff s >= 1 - 1/q, with strict inequalities
// at q = inf); ultra backends for zero/gaussian/delta. Everything else is
// oracle_unavailable.
WavefrontOracle analytic_wavefront(const AnalyticSignal& entry,
                                   const NormBackend& backend, int dim);

}  // namespace wf
