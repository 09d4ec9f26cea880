#include <chrono>

#include <Eigen/SparseCholesky>

#include "mpt/solve.hpp"

namespace mpt {

const char* theta_variant_name(ThetaVariant v) {
  switch (v) {
    case ThetaVariant::Full: return "full";
    case ThetaVariant::Eddy: return "eddy";
    case ThetaVariant::Static: return "static";
  }
  return "?";
}

void SolverParams::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
    throw std::invalid_argument("SolverParams: rel_tol must be in (0, 1e-3]");
  if (quadrature_order < 2)
    throw std::invalid_argument("SolverParams: quadrature_order must be >= 2");
  if (max_iterations < 1) throw std::invalid_argument("SolverParams: max_iterations >= 1");
  if (!(regularization >= 0.0))
    throw std::invalid_argument("SolverParams: regularization must be >= 0");
}

std::string SolveDiagnostics::log_line(const std::string& what) const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "solve=%s n=%d residual=%.3e iterations=%d method=%s weak_div=%.3e "
                "t_assemble=%.2fs t_solve=%.2fs",
                what.c_str(), n_dofs, residual, iterations, direct ? "direct" : "iterative",
                weak_divergence, assemble_seconds, solve_seconds);
  return buf;
}

CVec3 DiscreteVectorField::value(int tet, const TetGeometry& g, const Vec3& xi) const {
  const Eigen::Vector4d l = barycentric(g, xi);
  double lam[4] = {l[0], l[1], l[2], l[3]};
  CVec3 out = CVec3::Zero();
  for (int e = 0; e < 6; ++e) {
    const auto& te = mesh->tet_edges[tet][e];
    out += coeffs[te.edge] * edge_basis_value(g, te, lam).cast<cplx>();
  }
  return out;
}

CVec3 DiscreteVectorField::curl(int tet, const TetGeometry& g) const {
  CVec3 out = CVec3::Zero();
  for (int e = 0; e < 6; ++e) {
    const auto& te = mesh->tet_edges[tet][e];
    out += coeffs[te.edge] * edge_basis_curl(g, te).cast<cplx>();
  }
  return out;
}

CVec3 DiscreteScalarField::grad(int tet, const TetGeometry& g) const {
  CVec3 out = CVec3::Zero();
  for (int j = 0; j < 4; ++j)
    out += coeffs[mesh->tets[tet][j]] * g.grad_lambda[j].cast<cplx>();
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct AssembledPieces {
  SparseR stiff;   // mu^{-1}-weighted curl-curl
  SparseR mass_in;   // unit mass, interior cells
  SparseR mass_out;  // unit mass, exterior cells
  SparseR abc;       // tangential face mass on the truncation sphere
};

AssembledPieces assemble_pieces(const Mesh& mesh, double mu_r, bool with_abc) {
  const int n = mesh.num_edges();
  std::vector<Eigen::Triplet<double>> tk, tmi, tmo, tb;
  tk.reserve(mesh.tets.size() * 36);
  tmi.reserve(mesh.tets.size() * 18);
  tmo.reserve(mesh.tets.size() * 18);

  for (size_t t = 0; t < mesh.tets.size(); ++t) {
    const TetGeometry g = tet_geometry(mesh, int(t));
    const bool interior = mesh.region[t] == 0;
    const double mu_inv = interior ? 1.0 / mu_r : 1.0;
    Vec3 curls[6];
    for (int e = 0; e < 6; ++e) curls[e] = edge_basis_curl(g, mesh.tet_edges[t][e]);
    for (int ei = 0; ei < 6; ++ei) {
      const auto& E1 = mesh.tet_edges[t][ei];
      for (int ej = 0; ej < 6; ++ej) {
        const auto& E2 = mesh.tet_edges[t][ej];
        tk.emplace_back(E1.edge, E2.edge, mu_inv * g.volume * curls[ei].dot(curls[ej]));
        auto ii = [&](int a, int c) { return g.volume * (1.0 + (a == c)) / 20.0; };
        const double m =
            g.grad_lambda[E1.lb].dot(g.grad_lambda[E2.lb]) * ii(E1.la, E2.la) -
            g.grad_lambda[E1.lb].dot(g.grad_lambda[E2.la]) * ii(E1.la, E2.lb) -
            g.grad_lambda[E1.la].dot(g.grad_lambda[E2.lb]) * ii(E1.lb, E2.la) +
            g.grad_lambda[E1.la].dot(g.grad_lambda[E2.la]) * ii(E1.lb, E2.lb);
        (interior ? tmi : tmo).emplace_back(E1.edge, E2.edge, m);
      }
    }
  }

  AssembledPieces p;
  p.stiff.resize(n, n);
  p.stiff.setFromTriplets(tk.begin(), tk.end());
  p.mass_in.resize(n, n);
  p.mass_in.setFromTriplets(tmi.begin(), tmi.end());
  p.mass_out.resize(n, n);
  p.mass_out.setFromTriplets(tmo.begin(), tmo.end());

  if (with_abc) {
    for (const auto& f : mesh.outer_faces) {
      const TetGeometry g = tet_geometry(mesh, f.tet);
      const Vec3& nrm = f.normal;
      // 3-point mid-edge rule, exact for the quadratic tangential product.
      const Vec3 a = mesh.vertices[f.v[0]], b = mesh.vertices[f.v[1]],
                 c = mesh.vertices[f.v[2]];
      const Vec3 pts[3] = {0.5 * (a + b), 0.5 * (b + c), 0.5 * (a + c)};
      for (const Vec3& q : pts) {
        const Eigen::Vector4d l = barycentric(g, q);
        double lam[4] = {l[0], l[1], l[2], l[3]};
        Vec3 wt[6];
        for (int e = 0; e < 6; ++e) {
          const Vec3 w = edge_basis_value(g, mesh.tet_edges[f.tet][e], lam);
          wt[e] = w - w.dot(nrm) * nrm;
        }
        const double wq = f.area / 3.0;
        for (int ei = 0; ei < 6; ++ei)
          for (int ej = 0; ej < 6; ++ej)
            tb.emplace_back(mesh.tet_edges[f.tet][ei].edge, mesh.tet_edges[f.tet][ej].edge,
                            wq * wt[ei].dot(wt[ej]));
      }
    }
  }
  p.abc.resize(n, n);
  p.abc.setFromTriplets(tb.begin(), tb.end());
  return p;
}

// RHS: int_B vol_coeff (e_i x xi) . w  +  int_Gamma jump_coeff (n x e_i) . w.
VecXc assemble_rhs(const Mesh& mesh, int axis, cplx vol_coeff, cplx jump_coeff) {
  VecXc b = VecXc::Zero(mesh.num_edges());
  const Vec3 ei = Vec3::Unit(axis);

  if (vol_coeff != cplx(0.0, 0.0)) {
    const auto& rule = tet_quadrature();
    for (size_t t = 0; t < mesh.tets.size(); ++t) {
      if (mesh.region[t] != 0) continue;
      const TetGeometry g = tet_geometry(mesh, int(t));
      for (const auto& qp : rule) {
        Vec3 x = Vec3::Zero();
        for (int j = 0; j < 4; ++j) x += qp.lambda[j] * g.p[j];
        const Vec3 f = ei.cross(x);
        const double w = qp.weight * g.volume;
        for (int e = 0; e < 6; ++e) {
          const auto& te = mesh.tet_edges[t][e];
          b[te.edge] += vol_coeff * w * f.dot(edge_basis_value(g, te, qp.lambda));
        }
      }
    }
  }

  if (jump_coeff != cplx(0.0, 0.0)) {
    for (const auto& f : mesh.interface_faces) {
      const TetGeometry g = tet_geometry(mesh, f.tet_in);
      const Vec3 jv = f.normal.cross(ei);
      const Vec3 a = mesh.vertices[f.v[0]], bb = mesh.vertices[f.v[1]],
                 c = mesh.vertices[f.v[2]];
      const Vec3 pts[3] = {0.5 * (a + bb), 0.5 * (bb + c), 0.5 * (a + c)};
      for (const Vec3& q : pts) {
        const Eigen::Vector4d l = barycentric(g, q);
        double lam[4] = {l[0], l[1], l[2], l[3]};
        const double wq = f.area / 3.0;
        for (int e = 0; e < 6; ++e) {
          const auto& te = mesh.tet_edges[f.tet_in][e];
          b[te.edge] += jump_coeff * wq * jv.dot(edge_basis_value(g, te, lam));
        }
      }
    }
  }
  return b;
}

// Removes the discrete-gradient component of the RHS (static solves): the
// polyhedral interface makes the jump functional slightly inconsistent on
// gradients, which the shifted curl-curl operator would amplify.
void project_out_gradients(const Mesh& mesh, const SparseR& mass, Eigen::MatrixXcd& B) {
  const SparseR G = discrete_gradient(mesh);
  SparseR gtmg = SparseR(G.transpose()) * mass * G;
  // Pin the constant null vector.
  gtmg.coeffRef(0, 0) += 1.0;
  Eigen::SimplicialLDLT<SparseR> ldlt(gtmg);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("gradient projection factorization failed");
  for (int c = 0; c < B.cols(); ++c) {
    const Eigen::VectorXd gr = G.transpose() * B.col(c).real();
    const Eigen::VectorXd gi = G.transpose() * B.col(c).imag();
    const Eigen::VectorXd cr = ldlt.solve(gr);
    const Eigen::VectorXd ci = ldlt.solve(gi);
    B.col(c).real() -= mass * (G * cr);
    B.col(c).imag() -= mass * (G * ci);
  }
}

struct ThetaProblem {
  ThetaVariant variant;
  cplx eps_r;
  double mu_r;
  cplx nu;
  double k_alpha;
  cplx mass_in;   // coefficient of the interior mass block
  cplx mass_out;  // exterior mass block
  cplx vol_coeff; // source multiplying e_i x xi in B
  bool abc;
  bool project_rhs;
};

std::array<DiscreteVectorField, 3> solve_theta_problem(const ThetaProblem& pb,
                                                       std::shared_ptr<const Mesh> mesh,
                                                       const SolverParams& params) {
  params.validate();
  if (!mesh || mesh->tets.empty()) throw std::invalid_argument("solve_theta: empty mesh");
  const auto t0 = Clock::now();

  const AssembledPieces pieces = assemble_pieces(*mesh, pb.mu_r, pb.abc);
  const int n = mesh->num_edges();

  // Shift size relative to the stiffness scale.
  const double kscale = pieces.stiff.diagonal().cwiseAbs().mean();
  const double mscale =
      (pieces.mass_in.diagonal() + pieces.mass_out.diagonal()).cwiseAbs().mean();
  const double delta = params.regularization * kscale / std::max(mscale, 1e-300);

  SparseC A = pieces.stiff.cast<cplx>();
  A += (pb.mass_in + delta) * pieces.mass_in.cast<cplx>();
  A += (pb.mass_out + delta) * pieces.mass_out.cast<cplx>();
  if (pb.abc && pb.k_alpha > 0.0)
    A += cplx(0.0, -pb.k_alpha) * pieces.abc.cast<cplx>();
  A.makeCompressed();

  const cplx jump_coeff = -2.0 * (1.0 - 1.0 / pb.mu_r);
  Eigen::MatrixXcd B(n, 3);
  for (int axis = 0; axis < 3; ++axis)
    B.col(axis) = assemble_rhs(*mesh, axis, pb.vol_coeff, jump_coeff);

  const SparseR mass_unit = pieces.mass_in + pieces.mass_out;
  if (pb.project_rhs) project_out_gradients(*mesh, mass_unit, B);
  const double assemble_s = seconds_since(t0);

  const auto t1 = Clock::now();
  std::vector<LinearSolveReport> reports;
  Eigen::MatrixXcd X;
  const double bmax = B.colwise().norm().maxCoeff();
  if (bmax == 0.0) {
    X = Eigen::MatrixXcd::Zero(n, 3);
    reports.resize(3);
    for (auto& r : reports) r.n = n;
  } else {
    X = sparse_solve(A, B, params.method, params.rel_tol, params.max_iterations, reports);
  }
  const double solve_s = seconds_since(t1);

  const SparseR G = discrete_gradient(*mesh);
  std::array<DiscreteVectorField, 3> out;
  for (int axis = 0; axis < 3; ++axis) {
    DiscreteVectorField f;
    f.mesh = mesh;
    f.coeffs = X.col(axis);
    f.axis = axis;
    f.variant = pb.variant;
    f.eps_r = pb.eps_r;
    f.mu_r = pb.mu_r;
    f.nu = pb.nu;
    f.k_alpha = pb.k_alpha;
    f.diag.n_dofs = n;
    f.diag.residual = reports[size_t(axis)].residual;
    f.diag.iterations = reports[size_t(axis)].iterations;
    f.diag.direct = reports[size_t(axis)].direct;
    f.diag.assemble_seconds = assemble_s;
    f.diag.solve_seconds = solve_s;
    const VecXc mx = mass_unit.cast<cplx>() * f.coeffs;
    const double xnorm = std::sqrt(std::abs(f.coeffs.dot(mx)));
    f.diag.weak_divergence =
        (G.transpose().cast<cplx>() * mx).norm() / std::max(xnorm, 1e-300);
    if (params.verbose)
      std::fputs((f.diag.log_line(std::string("theta-") + theta_variant_name(pb.variant) +
                                  "-axis" + std::to_string(axis + 1)) +
                  "\n")
                     .c_str(),
                 stderr);
    out[size_t(axis)] = std::move(f);
  }
  return out;
}

}  // namespace

std::array<DiscreteVectorField, 3> solve_theta_full_all(const ContrastSet& cs,
                                                        std::shared_ptr<const Mesh> mesh,
                                                        const SolverParams& params) {
  if (!(cs.k_alpha >= 0.0)) throw std::invalid_argument("solve_theta_full: k_alpha < 0");
  if (cs.k_alpha < 1e-6 && std::abs(cs.nu) < 1e-14)
    throw std::invalid_argument(
        "solve_theta_full: k_alpha ~ 0 with vanishing nu; use the static or eddy variant");
  ThetaProblem pb;
  pb.variant = ThetaVariant::Full;
  pb.eps_r = cs.eps_r;
  pb.mu_r = cs.mu_r;
  pb.nu = cs.nu;
  pb.k_alpha = cs.k_alpha;
  const double ka2 = cs.k_alpha * cs.k_alpha;
  pb.mass_in = -ka2 * cs.eps_r;
  pb.mass_out = cplx(-ka2, 0.0);
  pb.vol_coeff = cs.nu;  // -k^2 a^2 (1 - eps_r)
  pb.abc = true;
  pb.project_rhs = false;
  return solve_theta_problem(pb, std::move(mesh), params);
}

std::array<DiscreteVectorField, 3> solve_theta_eddy_all(double nu_i, double mu_r,
                                                        std::shared_ptr<const Mesh> mesh,
                                                        const SolverParams& params) {
  if (!(nu_i >= 0.0)) throw std::invalid_argument("solve_theta_eddy: nu_i must be >= 0");
  if (!(mu_r > 0.0)) throw std::invalid_argument("solve_theta_eddy: mu_r must be > 0");
  ThetaProblem pb;
  pb.variant = ThetaVariant::Eddy;
  pb.eps_r = cplx(1.0, 0.0);
  pb.mu_r = mu_r;
  pb.nu = cplx(0.0, nu_i);
  pb.k_alpha = 0.0;
  pb.mass_in = cplx(0.0, -nu_i);
  pb.mass_out = 0.0;
  pb.vol_coeff = cplx(0.0, nu_i);
  pb.abc = false;
  pb.project_rhs = nu_i == 0.0;
  return solve_theta_problem(pb, std::move(mesh), params);
}

std::array<DiscreteVectorField, 3> solve_theta_static_all(double mu_r,
                                                          std::shared_ptr<const Mesh> mesh,
                                                          const SolverParams& params) {
  if (!(mu_r > 0.0)) throw std::invalid_argument("solve_theta_static: mu_r must be > 0");
  ThetaProblem pb;
  pb.variant = ThetaVariant::Static;
  pb.eps_r = cplx(1.0, 0.0);
  pb.mu_r = mu_r;
  pb.nu = 0.0;
  pb.k_alpha = 0.0;
  pb.mass_in = 0.0;
  pb.mass_out = 0.0;
  pb.vol_coeff = 0.0;
  pb.abc = false;
  pb.project_rhs = true;
  return solve_theta_problem(pb, std::move(mesh), params);
}

namespace {
int check_axis(int axis) {
  if (axis < 1 || axis > 3)
    throw std::invalid_argument("theta solve: axis index must be 1..3");
  return axis - 1;
}
}  // namespace

DiscreteVectorField solve_theta_full(int axis, const ContrastSet& cs,
                                     std::shared_ptr<const Mesh> mesh,
                                     const SolverParams& params) {
  return solve_theta_full_all(cs, std::move(mesh), params)[size_t(check_axis(axis))];
}

DiscreteVectorField solve_theta_eddy(int axis, double nu_i, double mu_r,
                                     std::shared_ptr<const Mesh> mesh,
                                     const SolverParams& params) {
  return solve_theta_eddy_all(nu_i, mu_r, std::move(mesh), params)[size_t(check_axis(axis))];
}

DiscreteVectorField solve_theta_static(int axis, double mu_r,
                                       std::shared_ptr<const Mesh> mesh,
                                       const SolverParams& params) {
  return solve_theta_static_all(mu_r, std::move(mesh), params)[size_t(check_axis(axis))];
}

double l2_norm_interior(const DiscreteVectorField& a) {
  const auto& rule = tet_quadrature();
  double s = 0.0;
  for (size_t t = 0; t < a.mesh->tets.size(); ++t) {
    if (a.mesh->region[t] != 0) continue;
    const TetGeometry g = tet_geometry(*a.mesh, int(t));
    for (const auto& qp : rule) {
      Vec3 x = Vec3::Zero();
      for (int j = 0; j < 4; ++j) x += qp.lambda[j] * g.p[j];
      s += qp.weight * g.volume * a.value(int(t), g, x).squaredNorm();
    }
  }
  return std::sqrt(s);
}

double l2_difference_interior(const DiscreteVectorField& a, const DiscreteVectorField& b) {
  if (a.mesh.get() != b.mesh.get())
    throw std::invalid_argument("l2_difference_interior: fields on different meshes");
  const auto& rule = tet_quadrature();
  double s = 0.0;
  for (size_t t = 0; t < a.mesh->tets.size(); ++t) {
    if (a.mesh->region[t] != 0) continue;
    const TetGeometry g = tet_geometry(*a.mesh, int(t));
    for (const auto& qp : rule) {
      Vec3 x = Vec3::Zero();
      for (int j = 0; j < 4; ++j) x += qp.lambda[j] * g.p[j];
      s += qp.weight * g.volume * (a.value(int(t), g, x) - b.value(int(t), g, x)).squaredNorm();
    }
  }
  return std::sqrt(s);
}

double tangential_jump_interface(const DiscreteVectorField& f) {
  double worst = 0.0;
  double scale = 0.0;
  for (const auto& face : f.mesh->interface_faces) {
    const TetGeometry gi = tet_geometry(*f.mesh, face.tet_in);
    const TetGeometry go = tet_geometry(*f.mesh, face.tet_out);
    const Vec3 a = f.mesh->vertices[face.v[0]], b = f.mesh->vertices[face.v[1]],
               c = f.mesh->vertices[face.v[2]];
    const Vec3 pts[3] = {0.5 * (a + b), 0.5 * (b + c), 0.5 * (a + c)};
    for (const Vec3& q : pts) {
      const CVec3 vin = f.value(face.tet_in, gi, q);
      const CVec3 vout = f.value(face.tet_out, go, q);
      const CVec3 jump = vin - vout;
      const CVec3 tang = jump - (face.normal.cast<cplx>().dot(jump)) * face.normal.cast<cplx>();
      worst = std::max(worst, tang.norm());
      scale = std::max(scale, vin.norm());
    }
  }
  return worst / std::max(scale, 1e-300);
}

}  // namespace mpt
