#pragma once

#include "mpt/core.hpp"

namespace mpt {

// Closed-form background (incident) fields satisfying the source-free scaled
// Maxwell pair curl E0 = i k H0, curl H0 = -i k E0.
//
// UniformH is the regular spherical mode normalized so H0(center) = h; it is
// exactly Maxwell-consistent for every k and reduces to a uniform field with
// E0 = 0 at k = 0. PlaneWave is the usual transverse plane wave.
class BackgroundField {
 public:
  enum class Kind { UniformH, PlaneWave };

  static BackgroundField uniform_h(const CVec3& h, double k, const Vec3& center);
  static BackgroundField plane_wave(const Vec3& direction, const Vec3& polarization,
                                    cplx amplitude, double k);

  Kind kind() const { return kind_; }
  double k() const { return k_; }

  CVec3 H(const Vec3& x) const;
  CVec3 E(const Vec3& x) const;
  CMat3 H_jacobian(const Vec3& x) const;
  CMat3 E_jacobian(const Vec3& x) const;

  struct Norms {
    double H0_W2inf = 0.0;  // sup over B_alpha of |H| + |DH| + |D^2 H|
    double E0_W1inf = 0.0;  // sup of |E| + |DE|
  };
  // Upper bounds of the Sobolev sup-norms over the ball |x - z| <= alpha,
  // from the closed forms (sampled radially for the uniform mode).
  Norms norms_over(const Vec3& z, double alpha) const;

 private:
  BackgroundField() = default;
  Kind kind_ = Kind::UniformH;
  double k_ = 0.0;
  // uniform mode
  CVec3 h_ = CVec3::Zero();
  Vec3 center_ = Vec3::Zero();
  // plane wave
  Vec3 dir_ = Vec3::UnitZ();
  Vec3 pol_ = Vec3::UnitX();
  cplx amp_{1.0, 0.0};
};

}  // namespace mpt
