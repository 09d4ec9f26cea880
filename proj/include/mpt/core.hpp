#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mpt {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

inline constexpr cplx I{0.0, 1.0};

namespace constants {
// Free-space permittivity and permeability, SI.
inline constexpr double eps0 = 8.854e-12;              // F/m
inline const double mu0 = 4.0 * M_PI * 1e-7;           // H/m
}  // namespace constants

class UnitShape;  // geometry module

// Homogeneous object material, unscaled SI values.
struct MaterialSpec {
  double eps_star = constants::eps0;  // permittivity, F/m
  double mu_star = constants::mu0;    // permeability, H/m
  double sigma_star = 0.0;            // conductivity, S/m

  void validate() const;
  double mu_r() const { return mu_star / constants::mu0; }
};

// Time-harmonic excitation, e^{-i omega t} convention.
struct Excitation {
  double omega = 0.0;  // rad/s

  void validate() const;
  double k() const { return omega * std::sqrt(constants::eps0 * constants::mu0); }
  double wavelength() const { return 2.0 * M_PI / k(); }
};

// Object B_alpha = alpha*B + z for a unit shape B at the origin.
struct ObjectPlacement {
  double alpha = 1.0;  // m
  Vec3 z = Vec3::Zero();
  std::shared_ptr<const UnitShape> shape;

  void validate() const;
};

// Dimensionless contrasts derived from material + excitation + scale.
struct ContrastSet {
  cplx eps_r;      // (eps_star + i sigma_star/omega)/eps0
  double mu_r;     // mu_star/mu0
  cplx nu;         // alpha^2 k^2 (eps_r - 1)
  double nu_r;     // (eps_star - eps0) mu0 omega^2 alpha^2
  double nu_i;     // sigma_star mu0 omega alpha^2
  double k_alpha;  // k * alpha
};

ContrastSet derive_contrasts(const MaterialSpec& mat, const Excitation& exc,
                             const ObjectPlacement& placement);

enum class Regime {
  FullModel,
  QuasiStatic,
  EddyCurrent,
  SmallKDielectric,
  SmallAlpha,
};

const char* regime_name(Regime r);

// Tunable validity thresholds for the model-reduction conditions. The
// topology-dependent constants in those conditions are not known a priori;
// these defaults stand in for "of moderate size".
struct RegimeThresholds {
  double alpha_over_lambda = 1e-2;   // quasi-static: alpha/lambda0 below this
  double eps_omega_over_sigma = 1e-3;  // eddy: eps_star*omega/sigma_star below this
};

Regime classify_regime(const ContrastSet& cs, const Excitation& exc,
                       const ObjectPlacement& placement, const MaterialSpec& mat,
                       const RegimeThresholds& thresholds = {});

}  // namespace mpt
