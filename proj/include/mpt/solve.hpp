#pragma once

#include <memory>

#include "mpt/core.hpp"
#include "mpt/fem.hpp"

namespace mpt {

enum class ThetaVariant { Full, Eddy, Static };

const char* theta_variant_name(ThetaVariant v);

struct SolverParams {
  double rel_tol = 1e-10;       // linear-solver relative residual
  int max_iterations = 400;     // Krylov budget before the direct fallback
  double regularization = 1e-8; // complex-shift size relative to the stiffness scale
  int quadrature_order = 2;
  SolveMethod method = SolveMethod::Auto;
  bool verbose = false;

  void validate() const;
};

struct SolveDiagnostics {
  int n_dofs = 0;
  double residual = 0.0;
  int iterations = 0;  // 0 for direct solves
  bool direct = true;
  double weak_divergence = 0.0;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;

  std::string log_line(const std::string& what) const;
};

// Curl-conforming (lowest-order edge) solution of one theta problem.
struct DiscreteVectorField {
  std::shared_ptr<const Mesh> mesh;
  VecXc coeffs;  // one per global edge
  int axis = 0;  // source axis i, 0-based
  ThetaVariant variant = ThetaVariant::Full;
  cplx eps_r{1.0, 0.0};
  double mu_r = 1.0;
  cplx nu{0.0, 0.0};
  double k_alpha = 0.0;
  SolveDiagnostics diag;

  CVec3 value(int tet, const TetGeometry& g, const Vec3& xi) const;
  CVec3 curl(int tet, const TetGeometry& g) const;
};

// Nodal solution of the scalar reduction problem.
struct DiscreteScalarField {
  std::shared_ptr<const Mesh> mesh;
  VecXc coeffs;  // one per vertex
  int axis = 0;
  cplx eps_r{1.0, 0.0};
  SolveDiagnostics diag;

  CVec3 grad(int tet, const TetGeometry& g) const;
};

// Vectorial transmission solves on the truncated mesh. The *_all variants
// share one assembly + factorization across the three source axes.
std::array<DiscreteVectorField, 3> solve_theta_full_all(
    const ContrastSet& cs, std::shared_ptr<const Mesh> mesh, const SolverParams& params);
std::array<DiscreteVectorField, 3> solve_theta_eddy_all(
    double nu_i, double mu_r, std::shared_ptr<const Mesh> mesh, const SolverParams& params);
std::array<DiscreteVectorField, 3> solve_theta_static_all(
    double mu_r, std::shared_ptr<const Mesh> mesh, const SolverParams& params);

DiscreteVectorField solve_theta_full(int axis, const ContrastSet& cs,
                                     std::shared_ptr<const Mesh> mesh,
                                     const SolverParams& params);
DiscreteVectorField solve_theta_eddy(int axis, double nu_i, double mu_r,
                                     std::shared_ptr<const Mesh> mesh,
                                     const SolverParams& params);
DiscreteVectorField solve_theta_static(int axis, double mu_r,
                                       std::shared_ptr<const Mesh> mesh,
                                       const SolverParams& params);

// Scalar reduction solves (nodal elements, Dirichlet decay at truncation).
std::array<DiscreteScalarField, 3> solve_vartheta_all(cplx eps_r,
                                                      std::shared_ptr<const Mesh> mesh,
                                                      const SolverParams& params);
DiscreteScalarField solve_vartheta(int axis, cplx eps_r, std::shared_ptr<const Mesh> mesh,
                                   const SolverParams& params);

// L2 norm over B of the difference of two edge fields on a common mesh.
double l2_difference_interior(const DiscreteVectorField& a, const DiscreteVectorField& b);
double l2_norm_interior(const DiscreteVectorField& a);

// Max tangential-trace jump of the solved field across interface faces,
// relative to the field scale (conformity check).
double tangential_jump_interface(const DiscreteVectorField& f);

}  // namespace mpt
