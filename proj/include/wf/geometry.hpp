// Copyright 2026 the wfdetect authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace wf {

using Vec2 = std::array<double, 2>;  // second entry unused in dim 1

double vec_norm(int dim, const Vec2& v);
double angle_of(const Vec2& v);                 // atan2 in (-pi, pi]
double wrap_angle(double a);                    // into (-pi, pi]
Vec2 unit_from_angle(double a);

// Open circular frequency cone. In dim 1 the only cones are the two open
// half-lines, selected by axis_sign; half_angle is ignored there.
class Cone {
 public:
  static Cone half_line(int axis_sign);
  static Cone circular(double axis_angle_rad, double half_angle_rad);
  // Builds the cone around a unit direction: half_line in dim 1, circular
  // in dim 2.
  static Cone around(int dim, const Vec2& direction, double half_angle_rad);

  int dim() const { return dim_; }
  int axis_sign() const { return axis_sign_; }
  double axis_angle() const { return axis_angle_; }
  double half_angle() const { return half_angle_; }
  Vec2 axis() const;

  // Open-cone membership; the origin and boundary rays are excluded.
  bool contains(const Vec2& xi) const;
  // Dim-2 membership for a nonzero point given by its angle; contains() and
  // angle-cached sweeps must agree bit-for-bit, so both funnel through this.
  bool contains_angle(double theta) const {
    return std::abs(wrap_angle(theta - axis_angle_)) < half_angle_;
  }

 private:
  Cone() = default;
  int dim_ = 1;
  int axis_sign_ = +1;       // dim 1
  double axis_angle_ = 0.0;  // dim 2
  double half_angle_ = 0.0;  // dim 2
};

inline int cone_indicator(const Cone& c, const Vec2& xi) {
  return c.contains(xi) ? 1 : 0;
}

// Unit directions discretizing the sphere: {+1,-1} in dim 1, n equally
// spaced angles 2*pi*k/n in dim 2, ordered by k.
struct DirectionGrid {
  int dim = 1;
  std::vector<Vec2> directions;
  std::vector<double> angles;  // matching angles; 0 and pi in dim 1
};

DirectionGrid direction_grid(int dim, int n);

// Largest c in (0,1), to within 1e-4, such that every eta with
// |eta - xi| <= c|xi| for some xi in gamma lies in gamma1. Requires strict
// angular containment closure(gamma) \ {0} within gamma1; coaxial circular
// cones use the closed form sin(half_angle1 - half_angle), other dim-2 pairs
// fall back to bisection over a dense (xi, eta) sweep. Dim 1 has no strict
// shrink and always errors.
double shrink_margin(const Cone& gamma, const Cone& gamma1);

// "cone:axis=<deg|+1|-1>,angle=<deg>". dim inferred from the axis form:
// bare +1/-1 means dim 1.
Cone parse_cone_spec(const std::string& spec, int dim);

}  // namespace wf
