#pragma once

#include "mpt/assemble.hpp"
#include "mpt/background.hpp"
#include "mpt/greens.hpp"
#include "mpt/oracles.hpp"

namespace mpt {

struct FieldPrediction {
  CVec3 H_delta = CVec3::Zero();
  // Per-term breakdown; the sum equals H_delta exactly.
  CVec3 term_A = CVec3::Zero();
  CVec3 term_B = CVec3::Zero();
  CVec3 term_C = CVec3::Zero();
  CVec3 term_N = CVec3::Zero();
  double residual_bound = 0.0;
};

// Leading-order expansion of the perturbed magnetic field, full tensor form.
// Valid for x away from the object; |x - z| < 3 alpha is rejected.
FieldPrediction hdelta_main(const Vec3& x, const ObjectPlacement& placement,
                            const TensorBundle& bundle, const BackgroundField& bg,
                            double residual_C = 1.0);

// Algebraically regrouped r^-3 / r^-2 / r^-1 shell form using M = N - Ccheck;
// identical to hdelta_main whenever the non-skew remainder R vanishes.
FieldPrediction hdelta_alt(const Vec3& x, const ObjectPlacement& placement,
                           const TensorBundle& bundle, const BackgroundField& bg,
                           double residual_C = 1.0);

// Quasi-static dominant response (static kernel contracted with M).
CVec3 hdelta_quasistatic(const Vec3& x, const ObjectPlacement& placement,
                         const Rank2TensorC& M, const CVec3& H0_at_z);

// Same kernel under the eddy-current model; kept distinct for provenance.
CVec3 hdelta_eddy(const Vec3& x, const ObjectPlacement& placement, const Rank2TensorC& M,
                  const CVec3& H0_at_z);

// Shell formula with the two Polya-Szego tensors of the non-conducting
// small-k reduction (T_mu acting on H0, T_eps on E0).
struct PolyaSzegoPair {
  Rank2TensorC T_mu;
  Rank2TensorC T_eps;
  bool conducting = false;  // provenance: sigma_star > 0 behind T_eps
};
CVec3 hdelta_smallk_dielectric(const Vec3& x, const ObjectPlacement& placement,
                               const PolyaSzegoPair& t, const BackgroundField& bg);
// Same kernel for the small-alpha reduction; conducting provenance allowed
// (complex eps_r folded into T_eps).
CVec3 hdelta_smallalpha(const Vec3& x, const ObjectPlacement& placement,
                        const PolyaSzegoPair& t, const BackgroundField& bg);

struct BackgroundNorms {
  double H0_W2inf = 0.0;
  double E0_W1inf = 0.0;
};
// |R(x)| <= C ( a^4 |H0|_{W2,inf} + a^4 k (|eps_r-1| + a k^2 |1 - 1/eps_r|) |E0|_{W1,inf} ).
double residual_bound(const ObjectPlacement& placement, const ContrastSet& cs, double k,
                      const BackgroundNorms& norms, double C = 1.0);

// Volume-integral representation of H_delta evaluated by quadrature over
// B_alpha with analytic interior fields.
struct VolumeQuadrature {
  int radial = 96;
  int n_theta = 24;
  int n_phi = 48;
  bool self_check = false;     // re-evaluate at half resolution and compare
  double self_tol = 1e-3;
};
CVec3 hdelta_volume_integral(const Vec3& x, const ObjectPlacement& placement,
                             const SphereInteriorFields& interior, const ContrastSet& cs,
                             double k, const VolumeQuadrature& quad = {});

}  // namespace mpt
