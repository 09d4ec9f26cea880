#pragma once

#include "mpt/core.hpp"

namespace mpt {

// Unit-scale object B centred at the origin, fitting inside the unit ball.
class UnitShape {
 public:
  enum class Kind { Sphere, Ellipsoid, Cube };

  static UnitShape sphere();
  static UnitShape ellipsoid(const Vec3& semi_axes);  // max semi-axis <= 1
  static UnitShape cube(double side);                 // centred, side <= 2/sqrt(3)

  Kind kind() const { return kind_; }
  const Vec3& semi_axes() const { return semi_axes_; }
  double side() const { return side_; }

  double volume() const;           // analytic
  double bounding_radius() const;  // radius of the smallest enclosing origin ball
  bool contains(const Vec3& xi) const;
  std::string describe() const;

 private:
  UnitShape(Kind k, const Vec3& ax, double side) : kind_(k), semi_axes_(ax), side_(side) {}
  Kind kind_;
  Vec3 semi_axes_ = Vec3::Ones();
  double side_ = 1.0;
};

}  // namespace mpt
