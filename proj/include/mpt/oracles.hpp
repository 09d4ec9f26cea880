#pragma once

#include "mpt/core.hpp"
#include "mpt/tensors.hpp"

namespace mpt {

// Parameters of the analytic sphere solution: interior Helmholtz wavenumber
// kappa = k_alpha * sqrt(eps_r * mu_r) on the unit sphere, exterior static
// matching. `order` bounds the power-series truncation used for small |kappa|;
// large |kappa| switches to closed scaled forms that cannot overflow.
struct SphereSeriesParams {
  double mu_r = 1.0;
  cplx eps_r = cplx(1.0, 0.0);
  double k_alpha = 0.0;
  int order = 30;

  // Principal square root with Im >= 0 enforced (decaying interior waves
  // under the e^{-i omega t} convention).
  cplx kappa() const;
};

// Magnetic dipole coefficient m of the sphere, so that M = m * Identity.
// Includes the alpha^3 size scaling. kappa -> 0 recovers the Polya-Szego
// sphere value 4 pi alpha^3 (mu_r - 1)/(mu_r + 2); |kappa| -> infinity the
// perfect-conductor value -2 pi alpha^3.
cplx sphere_mpt_full(const SphereSeriesParams& p, double alpha);

// Same coefficient under the eddy-current model, kappa^2 = i nu_i mu_r.
cplx sphere_mpt_eddy(double mu_r, double nu_i, double alpha, int order = 30);

// Polya-Szego tensor of the sphere for a (complex) contrast c:
//   alpha^3 * 4 pi (c-1)/(c+2) * Identity.
Rank2TensorC polya_szego_sphere(cplx contrast, double alpha);

// Depolarization factors of an ellipsoid with the given semi-axes, computed
// by adaptive quadrature of the standard elliptic integrals. Sum is 1.
Vec3 depolarization_factors(const Vec3& semi_axes);

// Polya-Szego tensor of an ellipsoid aligned with the coordinate axes:
//   diag_j  alpha^3 |B| (c-1) / (1 + (c-1) L_j).
Rank2TensorC polya_szego_ellipsoid(const Vec3& semi_axes, cplx contrast, double alpha);

// Analytic interior fields (scaled E_alpha, H_alpha) of the sphere under a
// background that is uniform (H0) plus an optional uniform symmetric
// traceless gradient (grad H0); magnetic multipole orders n = 1, 2. Exterior
// matching is static. Used as the reference for the volume-integral
// representation of the perturbed field.
class SphereInteriorFields {
 public:
  SphereInteriorFields(const SphereSeriesParams& p, double alpha, const Vec3& center,
                       const CVec3& H0, const CMat3& H0_gradient = CMat3::Zero());

  // Fields at a physical point y inside the sphere; outside -> domain error.
  CVec3 H(const Vec3& y) const;
  CVec3 E(const Vec3& y) const;

  // Unit-scale dipole coefficient (multiply by alpha^3 for M's diagonal).
  cplx dipole_m() const { return m_unit_; }
  // Exterior quadrupole coefficient of the gradient response.
  cplx quadrupole_beta() const { return beta_; }
  // Estimate of the neglected excitation orders (Taylor tail of the
  // background beyond the linear term plus the electric-mode response).
  double tail_estimate() const;

  double alpha() const { return alpha_; }
  const Vec3& center() const { return center_; }

 private:
  SphereSeriesParams p_;
  double alpha_;
  Vec3 center_;
  CVec3 h_;       // uniform part of H0
  CMat3 g_;       // symmetric traceless gradient part
  cplx kappa_;
  cplx m_unit_;   // dipole coefficient, unit sphere
  cplx beta_;     // quadrupole coefficient, unit sphere
};

namespace detail {
// Scaled spherical Bessel functions: jhat_n(u) = j_n(u) * e^{i u}, bounded
// for Im(u) >= 0 however large |u| gets. Power series below the crossover
// |u| = 10 (truncated at `order` terms), closed forms in w = e^{2iu} above.
struct ScaledBessel {
  cplx j0, j1, j2;  // jhat_n(u)
};
ScaledBessel scaled_bessel(cplx u, int order);
// Ratios j_n(u)/j_m(kappa) = (jhat_n(u)/jhat_m(kappa)) * e^{i(kappa - u)};
// the exponential factor has modulus <= 1 whenever Im(u) <= Im(kappa).
}  // namespace detail

}  // namespace mpt
