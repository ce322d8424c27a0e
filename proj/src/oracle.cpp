// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/oracle.hpp"

#include <cmath>

#include "wf/error.hpp"

namespace wf {

namespace {

WavefrontOracle empty_oracle() { return WavefrontOracle{}; }

WavefrontOracle point_all_dirs(const Vec2& x0) {
  WavefrontOracle o;
  o.empty = false;
  o.region = WavefrontOracle::Region::point;
  o.point = x0;
  o.all_directions = true;
  return o;
}

}  // namespace

WavefrontOracle analytic_wavefront(const AnalyticSignal& entry,
                                   const NormBackend& backend, int dim) {
  using Kind = AnalyticSignal::Kind;
  const bool poly = backend.kind() == WeightKind::polynomial;
  const double q = backend.q();
  const double s = backend.s();

  switch (entry.kind) {
    case Kind::zero:
    case Kind::gaussian:
      return empty_oracle();  // Schwartz regularity beats every weight here

    case Kind::plane_wave:
    case Kind::chirp:
      if (poly) return empty_oracle();
      fail(ErrorKind::oracle_unavailable,
           "no oracle for smooth oscillatory entries against ultra "
           "backends (bump windows are not Gevrey-certified)");

    case Kind::delta: {
      bool singular;
      if (poly)
        // |F delta| is flat: membership is integrability of w^q on a cone.
        singular = backend.is_linf() ? (s > 0.0) : (s >= -dim / q);
      else
        singular = backend.t() > 0.0 ||
                   (backend.t() == 0.0 && !backend.is_linf());
      return singular ? point_all_dirs(entry.x0) : empty_oracle();
    }

    case Kind::heaviside: {
      if (!poly)
        fail(ErrorKind::oracle_unavailable,
             "no oracle for jump entries against ultra backends");
      if (dim != 1)
        fail(ErrorKind::oracle_unavailable, "heaviside oracle is dim-1");
      // Conormal profile ~ 1/|xi|.
      const bool singular =
          backend.is_linf() ? (s > 1.0) : (s >= 1.0 - 1.0 / q);
      if (!singular) return empty_oracle();
      WavefrontOracle o;
      o.empty = false;
      o.region = WavefrontOracle::Region::point;
      o.point = entry.x0;
      o.directions = {{+1.0, 0.0}, {-1.0, 0.0}};
      return o;
    }

    case Kind::half_plane: {
      if (!poly)
        fail(ErrorKind::oracle_unavailable,
             "no oracle for jump entries against ultra backends");
      if (dim != 2)
        fail(ErrorKind::oracle_unavailable, "half_plane oracle is dim-2");
      const bool singular =
          backend.is_linf() ? (s > 1.0) : (s >= 1.0 - 1.0 / q);
      if (!singular) return empty_oracle();
      WavefrontOracle o;
      o.empty = false;
      o.region = WavefrontOracle::Region::line;
      o.line_normal = entry.normal;
      o.line_offset = entry.offset;
      o.directions = {entry.normal, {-entry.normal[0], -entry.normal[1]}};
      return o;
    }
  }
  fail(ErrorKind::oracle_unavailable, "unknown catalog entry");
}

}  // namespace wf
