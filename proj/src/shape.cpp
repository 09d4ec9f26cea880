#include "mpt/shape.hpp"

namespace mpt {

UnitShape UnitShape::sphere() { return UnitShape(Kind::Sphere, Vec3::Ones(), 0.0); }

UnitShape UnitShape::ellipsoid(const Vec3& semi_axes) {
  for (int j = 0; j < 3; ++j)
    if (!(semi_axes[j] > 0.0))
      throw std::domain_error("UnitShape: ellipsoid semi-axes must be > 0");
  if (semi_axes.maxCoeff() > 1.0 + 1e-12)
    throw std::domain_error("UnitShape: ellipsoid must fit in the unit ball (max semi-axis <= 1)");
  return UnitShape(Kind::Ellipsoid, semi_axes, 0.0);
}

UnitShape UnitShape::cube(double side) {
  if (!(side > 0.0)) throw std::domain_error("UnitShape: cube side must be > 0");
  if (side * std::sqrt(3.0) / 2.0 > 1.0 + 1e-12)
    throw std::domain_error("UnitShape: cube must fit in the unit ball");
  return UnitShape(Kind::Cube, Vec3::Ones(), side);
}

double UnitShape::volume() const {
  switch (kind_) {
    case Kind::Sphere: return 4.0 * M_PI / 3.0;
    case Kind::Ellipsoid:
      return 4.0 * M_PI / 3.0 * semi_axes_[0] * semi_axes_[1] * semi_axes_[2];
    case Kind::Cube: return side_ * side_ * side_;
  }
  return 0.0;
}

double UnitShape::bounding_radius() const {
  switch (kind_) {
    case Kind::Sphere: return 1.0;
    case Kind::Ellipsoid: return semi_axes_.maxCoeff();
    case Kind::Cube: return side_ * std::sqrt(3.0) / 2.0;
  }
  return 0.0;
}

bool UnitShape::contains(const Vec3& xi) const {
  switch (kind_) {
    case Kind::Sphere: return xi.norm() <= 1.0;
    case Kind::Ellipsoid: {
      const Vec3 s = xi.cwiseQuotient(semi_axes_);
      return s.norm() <= 1.0;
    }
    case Kind::Cube: return xi.cwiseAbs().maxCoeff() <= side_ / 2.0;
  }
  return false;
}

std::string UnitShape::describe() const {
  switch (kind_) {
    case Kind::Sphere: return "sphere";
    case Kind::Ellipsoid:
      return "ellipsoid " + std::to_string(semi_axes_[0]) + " " +
             std::to_string(semi_axes_[1]) + " " + std::to_string(semi_axes_[2]);
    case Kind::Cube: return "cube side " + std::to_string(side_);
  }
  return "?";
}

}  // namespace mpt
