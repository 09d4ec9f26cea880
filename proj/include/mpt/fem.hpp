#pragma once

#include <Eigen/Sparse>

#include "mpt/core.hpp"
#include "mpt/mesh.hpp"

namespace mpt {

using SparseC = Eigen::SparseMatrix<cplx>;
using SparseR = Eigen::SparseMatrix<double>;
using VecXc = Eigen::VectorXcd;

// Affine data of one tetrahedron.
struct TetGeometry {
  Vec3 p[4];
  Vec3 grad_lambda[4];
  double volume;
};
TetGeometry tet_geometry(const Mesh& mesh, int t);

// Degree-2 quadrature on the reference tetrahedron (4 points, barycentric).
struct TetQuadPoint {
  double lambda[4];
  double weight;  // of the tet volume
};
const std::array<TetQuadPoint, 4>& tet_quadrature();

// Barycentric coordinates of a point w.r.t. tet t.
Eigen::Vector4d barycentric(const TetGeometry& g, const Vec3& x);

// Lowest-order edge basis on tet t: w_e = lambda_a grad(lambda_b) -
// lambda_b grad(lambda_a) with (a, b) ordered by global vertex index;
// curl w_e = 2 grad(lambda_a) x grad(lambda_b).
Vec3 edge_basis_value(const TetGeometry& g, const Mesh::TetEdge& e, const double lambda[4]);
Vec3 edge_basis_curl(const TetGeometry& g, const Mesh::TetEdge& e);

// Unit-coefficient edge mass matrix (exact, via barycentric moments) and the
// discrete gradient map (edges x vertices), whose range is the gradient
// subspace of the edge space.
SparseR edge_mass_matrix(const Mesh& mesh);
SparseR discrete_gradient(const Mesh& mesh);

struct LinearSolveReport {
  int n = 0;
  double residual = 0.0;
  int iterations = 0;        // Krylov iterations; 0 for a direct solve
  bool direct = true;
  std::string note;
};

enum class SolveMethod { Auto, Direct, Iterative };

// Solves A x = b for complex sparse A (shared factorization across columns of
// B). Auto tries preconditioned BiCGSTAB first and falls back to SparseLU;
// direct solves apply iterative refinement until rel_tol or stagnation.
Eigen::MatrixXcd sparse_solve(const SparseC& A, const Eigen::MatrixXcd& B,
                              SolveMethod method, double rel_tol, int max_iterations,
                              std::vector<LinearSolveReport>& reports);

}  // namespace mpt
