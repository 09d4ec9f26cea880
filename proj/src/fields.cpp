#include "mpt/fields.hpp"

namespace mpt {

namespace {

void check_validity(const Vec3& x, const ObjectPlacement& placement) {
  const double r = (x - placement.z).norm();
  if (r < 3.0 * placement.alpha)
    throw std::domain_error(
        "field evaluation point is inside the validity radius 3*alpha of the expansion");
}

double bundle_residual(const ObjectPlacement& placement, const TensorBundle& b,
                       const BackgroundField& bg, double C) {
  const auto norms = bg.norms_over(placement.z, placement.alpha);
  ContrastSet cs;
  cs.eps_r = b.provenance.eps_r;
  BackgroundNorms bn{norms.H0_W2inf, norms.E0_W1inf};
  return residual_bound(placement, cs, b.provenance.k, bn, C);
}

}  // namespace

FieldPrediction hdelta_main(const Vec3& x, const ObjectPlacement& placement,
                            const TensorBundle& bundle, const BackgroundField& bg,
                            double residual_C) {
  check_validity(x, placement);
  const double k = bundle.provenance.k;
  const GreensDerivatives g = greens_eval(x, placement.z, k);
  const CVec3 H0 = bg.H(placement.z);
  const CVec3 E0 = bg.E(placement.z);

  FieldPrediction out;
  out.term_A = -I * k * g.grad.cross(bundle.A.apply(H0));
  out.term_B = -I * k * g.grad.cross(bundle.B.apply(E0));

  // (D^2 G)_{lm} eps_{jls} C_{msi} H0_i
  CMat3 w = CMat3::Zero();
  for (int m = 0; m < 3; ++m)
    for (int s = 0; s < 3; ++s) {
      cplx acc = 0.0;
      for (int i = 0; i < 3; ++i) acc += bundle.C(m, s, i) * H0[i];
      w(m, s) = acc;
    }
  const CMat3 dw = g.hess * w;  // (l, s) = (D^2 G)_{lm} w_{ms}
  out.term_C = CVec3(dw(1, 2) - dw(2, 1), dw(2, 0) - dw(0, 2), dw(0, 1) - dw(1, 0));

  out.term_N = (g.hess + k * k * g.value * CMat3::Identity()) * bundle.N.apply(H0);

  out.H_delta = out.term_A + out.term_B + out.term_C + out.term_N;
  out.residual_bound = bundle_residual(placement, bundle, bg, residual_C);
  return out;
}

FieldPrediction hdelta_alt(const Vec3& x, const ObjectPlacement& placement,
                           const TensorBundle& bundle, const BackgroundField& bg,
                           double residual_C) {
  check_validity(x, placement);
  const double k = bundle.provenance.k;
  const Vec3 d = x - placement.z;
  const double r = d.norm();
  const Vec3 rh = d / r;
  const CVec3 rhc = rh.cast<cplx>();
  const cplx phase = std::exp(I * k * r) / (4.0 * M_PI);
  const CVec3 H0 = bg.H(placement.z);
  const CVec3 E0 = bg.E(placement.z);

  const CVec3 MH = bundle.M.apply(H0);
  const CVec3 AH = bundle.A.apply(H0);
  const CVec3 BE = bundle.B.apply(E0);
  const cplx rMH = rhc.conjugate().dot(MH);
  const CVec3 dip = 3.0 * rMH * rhc - MH;

  FieldPrediction out;
  const CVec3 mterm = phase * (dip / (r * r * r) - I * k / (r * r) * dip -
                               k * k / r * rhc.cross(rhc.cross(MH)));
  out.term_N = mterm;
  out.term_A = phase * (I * k / (r * r) * rhc.cross(AH) + k * k / r * rhc.cross(AH));
  out.term_B = phase * (I * k / (r * r) * rhc.cross(BE) + k * k / r * rhc.cross(BE));
  out.term_C = CVec3::Zero();  // folded into M = N - Ccheck
  out.H_delta = out.term_A + out.term_B + out.term_C + out.term_N;
  out.residual_bound = bundle_residual(placement, bundle, bg, residual_C);
  return out;
}

CVec3 hdelta_quasistatic(const Vec3& x, const ObjectPlacement& placement,
                         const Rank2TensorC& M, const CVec3& H0_at_z) {
  const Vec3 d = x - placement.z;
  const double r = d.norm();
  if (r <= 0.0) throw std::domain_error("hdelta_quasistatic: r = 0 singularity");
  const CVec3 rhc = (d / r).cast<cplx>();
  const CVec3 MH = M.apply(H0_at_z);
  const cplx rMH = rhc.conjugate().dot(MH);
  return (3.0 * rMH * rhc - MH) / (4.0 * M_PI * r * r * r);
}

CVec3 hdelta_eddy(const Vec3& x, const ObjectPlacement& placement, const Rank2TensorC& M,
                  const CVec3& H0_at_z) {
  return hdelta_quasistatic(x, placement, M, H0_at_z);
}

namespace {

CVec3 shell_formula(const Vec3& x, const ObjectPlacement& placement,
                    const Rank2TensorC& T_mu, const Rank2TensorC& T_eps,
                    const BackgroundField& bg) {
  const double k = bg.k();
  const Vec3 d = x - placement.z;
  const double r = d.norm();
  if (r <= 0.0) throw std::domain_error("shell formula: r = 0 singularity");
  const CVec3 rhc = (d / r).cast<cplx>();
  const cplx phase = std::exp(I * k * r) / (4.0 * M_PI);
  const CVec3 TH = T_mu.apply(bg.H(placement.z));
  const CVec3 TE = T_eps.apply(bg.E(placement.z));
  const cplx rTH = rhc.conjugate().dot(TH);
  const CVec3 dip = 3.0 * rTH * rhc - TH;
  return phase * (dip / (r * r * r) - I * k / (r * r) * (dip - rhc.cross(TE)) -
                  k * k / r * (rhc.cross(rhc.cross(TH)) - rhc.cross(TE)));
}

}  // namespace

CVec3 hdelta_smallk_dielectric(const Vec3& x, const ObjectPlacement& placement,
                               const PolyaSzegoPair& t, const BackgroundField& bg) {
  if (t.conducting)
    throw std::invalid_argument(
        "hdelta_smallk_dielectric: requires sigma_star = 0 provenance; use the "
        "small-alpha form for conducting objects");
  return shell_formula(x, placement, t.T_mu, t.T_eps, bg);
}

CVec3 hdelta_smallalpha(const Vec3& x, const ObjectPlacement& placement,
                        const PolyaSzegoPair& t, const BackgroundField& bg) {
  return shell_formula(x, placement, t.T_mu, t.T_eps, bg);
}

double residual_bound(const ObjectPlacement& placement, const ContrastSet& cs, double k,
                      const BackgroundNorms& norms, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("residual_bound: C must be > 0");
  if (!(norms.H0_W2inf >= 0.0 && norms.E0_W1inf >= 0.0))
    throw std::invalid_argument("residual_bound: norms must be >= 0");
  const double a = placement.alpha;
  const double a4 = a * a * a * a;
  const double eterm =
      std::abs(cs.eps_r - 1.0) + a * k * k * std::abs(1.0 - 1.0 / cs.eps_r);
  return C * (a4 * norms.H0_W2inf + a4 * k * eterm * norms.E0_W1inf);
}

namespace {

// Nodes/weights of n-point Gauss-Legendre on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& xs, std::vector<double>& ws) {
  xs.resize(size_t(n));
  ws.resize(size_t(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        double q0 = 1.0, q1 = x;
        for (int j = 2; j <= n; ++j) {
          const double q2 = ((2.0 * j - 1.0) * x * q1 - (j - 1.0) * q0) / j;
          q0 = q1;
          q1 = q2;
        }
        const double dq = n * (x * q1 - q0) / (x * x - 1.0);
        xs[size_t(i)] = x;
        ws[size_t(i)] = 2.0 / ((1.0 - x * x) * dq * dq);
        break;
      }
    }
  }
}

CVec3 volume_integral_once(const Vec3& x, const ObjectPlacement& placement,
                           const SphereInteriorFields& interior, const ContrastSet& cs,
                           double k, int nr, int nt, int np) {
  std::vector<double> rx, rw, tx, tw;
  gauss_legendre(nr, rx, rw);
  gauss_legendre(nt, tx, tw);
  const double a = placement.alpha;
  const cplx ek = -I * k * (cs.eps_r - 1.0);
  const double mu1 = cs.mu_r - 1.0;

  CVec3 acc = CVec3::Zero();
  for (int ir = 0; ir < nr; ++ir) {
    const double rho = 0.5 * (rx[size_t(ir)] + 1.0);  // [0, 1]
    const double wr = 0.5 * rw[size_t(ir)] * rho * rho;
    for (int it = 0; it < nt; ++it) {
      const double ct = tx[size_t(it)];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int ip = 0; ip < np; ++ip) {
        const double phi = 2.0 * M_PI * (ip + 0.5) / np;
        const Vec3 dir(st * std::cos(phi), st * std::sin(phi), ct);
        const Vec3 y = placement.z + a * rho * dir;
        const double w = wr * tw[size_t(it)] * (2.0 * M_PI / np) * a * a * a;

        const GreensDerivatives g = greens_eval(x, y, k);
        const CVec3 Ea = interior.E(y);
        const CVec3 Ha = interior.H(y);
        // D_y^2 G = D_x^2 G for a kernel of x - y.
        acc += w * (ek * g.grad.cross(Ea) + k * k * mu1 * g.value * Ha +
                    mu1 * (g.hess * Ha));
      }
    }
  }
  return acc;
}

}  // namespace

CVec3 hdelta_volume_integral(const Vec3& x, const ObjectPlacement& placement,
                             const SphereInteriorFields& interior, const ContrastSet& cs,
                             double k, const VolumeQuadrature& quad) {
  if ((x - placement.z).norm() <= placement.alpha)
    throw std::domain_error("hdelta_volume_integral: x must lie outside the object");
  if (quad.radial < 4 || quad.n_theta < 4 || quad.n_phi < 4)
    throw std::invalid_argument("hdelta_volume_integral: quadrature too coarse");
  const CVec3 fine = volume_integral_once(x, placement, interior, cs, k, quad.radial,
                                          quad.n_theta, quad.n_phi);
  if (quad.self_check) {
    const CVec3 coarse = volume_integral_once(x, placement, interior, cs, k,
                                              quad.radial / 2, quad.n_theta / 2,
                                              std::max(4, quad.n_phi / 2));
    const double tail = (fine - coarse).norm();
    if (tail > quad.self_tol * fine.norm())
      throw std::runtime_error(
          "hdelta_volume_integral: quadrature not converged, tail estimate " +
          std::to_string(tail));
  }
  return fine;
}

}  // namespace mpt
