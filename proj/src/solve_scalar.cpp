#include <chrono>

#include "mpt/solve.hpp"

namespace mpt {

namespace {
using Clock = std::chrono::steady_clock;
}

std::array<DiscreteScalarField, 3> solve_vartheta_all(cplx eps_r,
                                                      std::shared_ptr<const Mesh> mesh,
                                                      const SolverParams& params) {
  params.validate();
  if (!mesh || mesh->tets.empty()) throw std::invalid_argument("solve_vartheta: empty mesh");
  const auto t0 = Clock::now();
  const int nv = int(mesh->vertices.size());

  // Dirichlet (decay) condition on the truncation sphere.
  std::vector<char> constrained(nv, 0);
  for (const auto& f : mesh->outer_faces)
    for (int v : f.v) constrained[v] = 1;
  std::vector<int> reduced(nv, -1);
  int nfree = 0;
  for (int v = 0; v < nv; ++v)
    if (!constrained[v]) reduced[v] = nfree++;

  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(mesh->tets.size() * 16);
  for (size_t t = 0; t < mesh->tets.size(); ++t) {
    const TetGeometry g = tet_geometry(*mesh, int(t));
    const cplx coeff = mesh->region[t] == 0 ? eps_r : cplx(1.0, 0.0);
    for (int i = 0; i < 4; ++i) {
      const int ri = reduced[mesh->tets[t][i]];
      if (ri < 0) continue;
      for (int j = 0; j < 4; ++j) {
        const int rj = reduced[mesh->tets[t][j]];
        if (rj < 0) continue;
        trip.emplace_back(ri, rj,
                          coeff * g.volume * g.grad_lambda[i].dot(g.grad_lambda[j]));
      }
    }
  }
  SparseC A(nfree, nfree);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();

  // RHS: -int_Gamma (n . e_i) q for each nodal q.
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(nfree, 3);
  for (const auto& f : mesh->interface_faces) {
    for (int axis = 0; axis < 3; ++axis) {
      const double flux = -f.normal[axis] * f.area / 3.0;
      for (int v : f.v)
        if (reduced[v] >= 0) B(reduced[v], axis) += flux;
    }
  }
  const double assemble_s = std::chrono::duration<double>(Clock::now() - t0).count();

  const auto t1 = Clock::now();
  std::vector<LinearSolveReport> reports;
  Eigen::MatrixXcd X;
  try {
    X = sparse_solve(A, B, params.method, params.rel_tol, params.max_iterations, reports);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("solve_vartheta: ill-conditioned system (near a "
                                         "plasmonic eps_r?): ") +
                             e.what());
  }
  const double solve_s = std::chrono::duration<double>(Clock::now() - t1).count();

  std::array<DiscreteScalarField, 3> out;
  for (int axis = 0; axis < 3; ++axis) {
    DiscreteScalarField f;
    f.mesh = mesh;
    f.axis = axis;
    f.eps_r = eps_r;
    f.coeffs = VecXc::Zero(nv);
    for (int v = 0; v < nv; ++v)
      if (reduced[v] >= 0) f.coeffs[v] = X(reduced[v], axis);
    f.diag.n_dofs = nfree;
    f.diag.residual = reports[size_t(axis)].residual;
    f.diag.iterations = reports[size_t(axis)].iterations;
    f.diag.direct = reports[size_t(axis)].direct;
    f.diag.assemble_seconds = assemble_s;
    f.diag.solve_seconds = solve_s;
    if (params.verbose)
      std::fputs((f.diag.log_line("vartheta-axis" + std::to_string(axis + 1)) + "\n").c_str(),
                 stderr);
    out[size_t(axis)] = std::move(f);
  }
  return out;
}

DiscreteScalarField solve_vartheta(int axis, cplx eps_r, std::shared_ptr<const Mesh> mesh,
                                   const SolverParams& params) {
  if (axis < 1 || axis > 3)
    throw std::invalid_argument("solve_vartheta: axis index must be 1..3");
  return solve_vartheta_all(eps_r, std::move(mesh), params)[size_t(axis - 1)];
}

}  // namespace mpt
