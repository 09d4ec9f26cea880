#include "mpt/fem.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace mpt {

TetGeometry tet_geometry(const Mesh& mesh, int t) {
  TetGeometry g;
  for (int j = 0; j < 4; ++j) g.p[j] = mesh.vertices[mesh.tets[t][j]];
  const Vec3 e1 = g.p[1] - g.p[0], e2 = g.p[2] - g.p[0], e3 = g.p[3] - g.p[0];
  Mat3 J;
  J.col(0) = e1;
  J.col(1) = e2;
  J.col(2) = e3;
  const double det = J.determinant();
  g.volume = det / 6.0;
  const Mat3 Jinv = J.inverse();
  // grad lambda_{1..3} are the rows of J^{-1}; lambda_0 = 1 - sum.
  for (int j = 0; j < 3; ++j) g.grad_lambda[j + 1] = Jinv.row(j);
  g.grad_lambda[0] = -(g.grad_lambda[1] + g.grad_lambda[2] + g.grad_lambda[3]);
  return g;
}

const std::array<TetQuadPoint, 4>& tet_quadrature() {
  static const double a = 0.58541019662496845;  // (5 + 3 sqrt 5)/20
  static const double b = 0.13819660112501051;  // (5 - sqrt 5)/20
  static const std::array<TetQuadPoint, 4> rule = {{
      {{a, b, b, b}, 0.25},
      {{b, a, b, b}, 0.25},
      {{b, b, a, b}, 0.25},
      {{b, b, b, a}, 0.25},
  }};
  return rule;
}

Eigen::Vector4d barycentric(const TetGeometry& g, const Vec3& x) {
  Eigen::Vector4d l;
  for (int j = 1; j < 4; ++j) l[j] = g.grad_lambda[j].dot(x - g.p[0]);
  l[0] = 1.0 - l[1] - l[2] - l[3];
  return l;
}

Vec3 edge_basis_value(const TetGeometry& g, const Mesh::TetEdge& e, const double lambda[4]) {
  return lambda[e.la] * g.grad_lambda[e.lb] - lambda[e.lb] * g.grad_lambda[e.la];
}

Vec3 edge_basis_curl(const TetGeometry& g, const Mesh::TetEdge& e) {
  return 2.0 * g.grad_lambda[e.la].cross(g.grad_lambda[e.lb]);
}

SparseR edge_mass_matrix(const Mesh& mesh) {
  const int n = mesh.num_edges();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.tets.size() * 36);
  for (size_t t = 0; t < mesh.tets.size(); ++t) {
    const TetGeometry g = tet_geometry(mesh, int(t));
    // int lambda_i lambda_j = V (1 + delta_ij) / 20
    for (int ei = 0; ei < 6; ++ei) {
      const auto& E1 = mesh.tet_edges[t][ei];
      for (int ej = 0; ej < 6; ++ej) {
        const auto& E2 = mesh.tet_edges[t][ej];
        auto ii = [&](int a, int c) { return g.volume * (1.0 + (a == c)) / 20.0; };
        const double v = g.grad_lambda[E1.lb].dot(g.grad_lambda[E2.lb]) * ii(E1.la, E2.la) -
                         g.grad_lambda[E1.lb].dot(g.grad_lambda[E2.la]) * ii(E1.la, E2.lb) -
                         g.grad_lambda[E1.la].dot(g.grad_lambda[E2.lb]) * ii(E1.lb, E2.la) +
                         g.grad_lambda[E1.la].dot(g.grad_lambda[E2.la]) * ii(E1.lb, E2.lb);
        trip.emplace_back(E1.edge, E2.edge, v);
      }
    }
  }
  SparseR m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseR discrete_gradient(const Mesh& mesh) {
  const int ne = mesh.num_edges();
  const int nv = int(mesh.vertices.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * ne);
  for (int e = 0; e < ne; ++e) {
    trip.emplace_back(e, mesh.edges[e][0], -1.0);
    trip.emplace_back(e, mesh.edges[e][1], 1.0);
  }
  SparseR g(ne, nv);
  g.setFromTriplets(trip.begin(), trip.end());
  return g;
}

Eigen::MatrixXcd sparse_solve(const SparseC& A, const Eigen::MatrixXcd& B,
                              SolveMethod method, double rel_tol, int max_iterations,
                              std::vector<LinearSolveReport>& reports) {
  const int n = int(A.rows());
  Eigen::MatrixXcd X(n, B.cols());

  auto record = [&](int col, double res, int iters, bool direct, std::string note) {
    LinearSolveReport r;
    r.n = n;
    r.residual = res;
    r.iterations = iters;
    r.direct = direct;
    r.note = std::move(note);
    reports.push_back(r);
  };

  if (method != SolveMethod::Direct) {
    Eigen::BiCGSTAB<SparseC, Eigen::IncompleteLUT<cplx>> it;
    it.preconditioner().setDroptol(1e-5);
    it.preconditioner().setFillfactor(20);
    it.setTolerance(rel_tol);
    it.setMaxIterations(max_iterations);
    it.compute(A);
    bool ok = it.info() == Eigen::Success;
    int total_iters = 0;
    if (ok) {
      for (int c = 0; c < B.cols() && ok; ++c) {
        X.col(c) = it.solve(B.col(c));
        total_iters += int(it.iterations());
        const double res = (A * X.col(c) - B.col(c)).norm() / B.col(c).norm();
        if (it.info() != Eigen::Success || !(res <= rel_tol)) ok = false;
        if (ok) record(c, res, int(it.iterations()), false, "bicgstab+ilut");
      }
    }
    if (ok) return X;
    if (method == SolveMethod::Iterative)
      throw std::runtime_error("iterative linear solve failed to reach tolerance (" +
                               std::to_string(total_iters) + " iterations)");
    reports.clear();  // fall through to the direct path
  }

  Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("sparse LU factorization failed (singular or ill-conditioned)");
  for (int c = 0; c < B.cols(); ++c) {
    VecXc x = lu.solve(B.col(c));
    const double bnorm = B.col(c).norm();
    double res = (A * x - B.col(c)).norm() / bnorm;
    // Iterative refinement with the existing factorization.
    for (int pass = 0; pass < 3 && res > rel_tol; ++pass) {
      const VecXc corr = lu.solve(VecXc(B.col(c) - A * x));
      x += corr;
      const double next = (A * x - B.col(c)).norm() / bnorm;
      if (next >= res) break;
      res = next;
    }
    if (!(res <= rel_tol))
      throw std::runtime_error("direct solve residual " + std::to_string(res) +
                               " above tolerance " + std::to_string(rel_tol));
    X.col(c) = x;
    record(c, res, 0, true, "sparselu");
  }
  return X;
}

}  // namespace mpt
