// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "wf/geometry.hpp"

#include <cmath>

#include "wf/error.hpp"
#include "wf/specstring.hpp"

namespace wf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double vec_norm(int dim, const Vec2& v) {
  return dim == 1 ? std::abs(v[0]) : std::hypot(v[0], v[1]);
}

double angle_of(const Vec2& v) { return std::atan2(v[1], v[0]); }

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }

Cone Cone::half_line(int axis_sign) {
  if (axis_sign != 1 && axis_sign != -1)
    fail(ErrorKind::invalid_argument, "dim-1 cone axis must be +1 or -1");
  Cone c;
  c.dim_ = 1;
  c.axis_sign_ = axis_sign;
  return c;
}

Cone Cone::circular(double axis_angle_rad, double half_angle_rad) {
  if (!(half_angle_rad > 0.0) || !(half_angle_rad < kPi / 2.0))
    fail(ErrorKind::invalid_argument,
         "cone half-angle must lie in (0, pi/2), got " +
             format_double(half_angle_rad));
  Cone c;
  c.dim_ = 2;
  c.axis_angle_ = wrap_angle(axis_angle_rad);
  c.half_angle_ = half_angle_rad;
  return c;
}

Cone Cone::around(int dim, const Vec2& direction, double half_angle_rad) {
  if (dim == 1) return half_line(direction[0] > 0.0 ? +1 : -1);
  if (dim == 2) return circular(angle_of(direction), half_angle_rad);
  fail(ErrorKind::unsupported_dimension, "cones support dim 1 and 2 only");
}

Vec2 Cone::axis() const {
  if (dim_ == 1) return {static_cast<double>(axis_sign_), 0.0};
  return unit_from_angle(axis_angle_);
}

bool Cone::contains(const Vec2& xi) const {
  if (dim_ == 1) {
    if (xi[0] == 0.0) return false;
    return (xi[0] > 0.0) == (axis_sign_ > 0);
  }
  if (xi[0] == 0.0 && xi[1] == 0.0) return false;
  return contains_angle(angle_of(xi));
}

DirectionGrid direction_grid(int dim, int n) {
  DirectionGrid g;
  g.dim = dim;
  if (dim == 1) {
    if (n != 2)
      fail(ErrorKind::invalid_argument, "dim-1 direction grid requires n=2");
    g.directions = {{+1.0, 0.0}, {-1.0, 0.0}};
    g.angles = {0.0, kPi};
    return g;
  }
  if (dim != 2)
    fail(ErrorKind::unsupported_dimension,
         "direction grids support dim 1 and 2 only");
  if (n < 2)
    fail(ErrorKind::invalid_argument, "dim-2 direction grid requires n >= 2");
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * kPi * k / n;
    g.angles.push_back(a);
    g.directions.push_back(unit_from_angle(a));
  }
  return g;
}

namespace {

// Checks that no eta = xi_hat + c*u (xi_hat in gamma, |u| = 1) escapes
// gamma1, sweeping a dense deterministic grid over both angles. Circular
// cones with half-angle below pi/2 are convex, so the sphere |eta - xi| =
// c|xi| is the worst case and interior points need no samples.
bool margin_feasible(const Cone& gamma, const Cone& gamma1, double c) {
  constexpr int kDirSteps = 720;
  constexpr int kRaySteps = 512;
  for (int i = 0; i < kRaySteps; ++i) {
    // Open cone: sample strictly interior rays accumulating at the boundary.
    const double frac = (i + 0.5) / kRaySteps;
    const double ray = gamma.axis_angle() +
                       gamma.half_angle() * (2.0 * frac - 1.0);
    const Vec2 xi = unit_from_angle(ray);
    for (int j = 0; j < kDirSteps; ++j) {
      const double ua = 2.0 * kPi * j / kDirSteps;
      const Vec2 eta{xi[0] + c * std::cos(ua), xi[1] + c * std::sin(ua)};
      if (!gamma1.contains(eta)) return false;
    }
  }
  return true;
}

}  // namespace

double shrink_margin(const Cone& gamma, const Cone& gamma1) {
  if (gamma.dim() != gamma1.dim())
    fail(ErrorKind::geometry, "cone dimensions differ");
  if (gamma.dim() == 1)
    fail(ErrorKind::geometry,
         "dim-1 cones admit no strict shrink (half-lines cannot be "
         "strictly contained)");
  const double axis_gap =
      std::abs(wrap_angle(gamma.axis_angle() - gamma1.axis_angle()));
  // closure(gamma) \ {0} inside gamma1 needs strict angular containment.
  if (!(axis_gap + gamma.half_angle() < gamma1.half_angle()))
    fail(ErrorKind::geometry,
         "closure of the inner cone is not strictly contained in the outer "
         "cone");

  const double cap = 1.0 - 1e-9;
  if (axis_gap < 1e-12) {
    const double c = std::sin(gamma1.half_angle() - gamma.half_angle());
    return std::min(c, cap);
  }
  // Non-coaxial: bisect on c. margin_feasible is monotone decreasing in c.
  double lo = 0.0, hi = cap;
  if (margin_feasible(gamma, gamma1, hi)) return hi;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (margin_feasible(gamma, gamma1, mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Cone parse_cone_spec(const std::string& spec, int dim) {
  SpecString s = SpecString::parse(spec);
  if (s.name != "cone")
    fail(ErrorKind::invalid_argument, "expected cone spec, got '" + spec + "'");
  const std::string axis = s.get_str("axis");
  if (dim == 1) {
    const double angle_unused = s.get_real("angle", 0.0);
    (void)angle_unused;
    s.require_consumed("cone");
    if (axis == "+1" || axis == "1") return Cone::half_line(+1);
    if (axis == "-1") return Cone::half_line(-1);
    fail(ErrorKind::invalid_argument,
         "dim-1 cone axis must be +1 or -1, got '" + axis + "'");
  }
  char* end = nullptr;
  const double deg = std::strtod(axis.c_str(), &end);
  if (end == axis.c_str() || *end != '\0')
    fail(ErrorKind::invalid_argument, "bad cone axis '" + axis + "'");
  const double half_deg = s.get_real("angle");
  s.require_consumed("cone");
  return Cone::circular(deg * kPi / 180.0, half_deg * kPi / 180.0);
}

}  // namespace wf
