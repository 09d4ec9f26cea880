#include "mpt/assemble.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "mpt/oracles.hpp"

namespace mpt {

namespace {

void check_triple(const std::array<DiscreteVectorField, 3>& theta, const char* who) {
  const Mesh* m = theta[0].mesh.get();
  for (int i = 0; i < 3; ++i) {
    if (theta[size_t(i)].mesh.get() != m || m == nullptr)
      throw std::invalid_argument(std::string(who) + ": fields on mismatched meshes");
    if (theta[size_t(i)].axis != i)
      throw std::invalid_argument(std::string(who) + ": fields must be ordered by axis");
    if (theta[size_t(i)].variant != theta[0].variant)
      throw std::invalid_argument(std::string(who) + ": fields from mixed problem variants");
  }
}

}  // namespace

Rank2TensorC assemble_A(const std::array<DiscreteVectorField, 3>& theta, cplx eps_r,
                        double k, double alpha) {
  check_triple(theta, "assemble_A");
  const cplx pref = I * k * alpha * alpha * alpha * alpha * (eps_r - 1.0) / 2.0;
  CMat3 a = CMat3::Zero();
  for (int i = 0; i < 3; ++i) {
    const CVec3 mom = field_moment(theta[size_t(i)]);
    for (int r = 0; r < 3; ++r) a(r, i) = pref * mom[r];
  }
  return Rank2TensorC(a);
}

Rank2TensorC assemble_B(const std::array<DiscreteScalarField, 3>& vartheta, cplx eps_r,
                        double alpha) {
  const Mesh* m = vartheta[0].mesh.get();
  for (int i = 0; i < 3; ++i)
    if (vartheta[size_t(i)].mesh.get() != m || vartheta[size_t(i)].axis != i)
      throw std::invalid_argument("assemble_B: fields mismatched");
  const double vol = m->region_volume(0);
  const double a3 = alpha * alpha * alpha;
  CMat3 b = CMat3::Zero();
  for (int i = 0; i < 3; ++i) {
    const CVec3 gm = scalar_grad_moment(vartheta[size_t(i)]);
    for (int r = 0; r < 3; ++r) {
      b(r, i) = a3 * ((eps_r - 1.0) * vol * double(r == i) +
                      (eps_r - 1.0) * (eps_r - 1.0) * gm[r]);
    }
  }
  // The scalar problem is self-adjoint; assemble the symmetric form exactly.
  return Rank2TensorC(0.5 * (b + CMat3(b.transpose())));
}

Rank3TensorC assemble_C(const std::array<DiscreteVectorField, 3>& theta, cplx eps_r,
                        double k, double alpha) {
  check_triple(theta, "assemble_C");
  const double a5 = std::pow(alpha, 5);
  const cplx pref = -k * k * a5 * (eps_r - 1.0) / 2.0;
  Rank3TensorC c;
  for (int i = 0; i < 3; ++i) {
    const CMat3 x = field_cross_moment(theta[size_t(i)]);
    for (int m = 0; m < 3; ++m)
      for (int s = 0; s < 3; ++s) c(m, s, i) = pref * x(m, s);
  }
  return c;
}

std::pair<Rank2TensorC, Rank3TensorC> skew_decompose_C(const Rank3TensorC& C) {
  Rank2TensorC check;
  for (int r = 0; r < 3; ++r)
    for (int i = 0; i < 3; ++i) {
      cplx acc = 0.0;
      for (int m = 0; m < 3; ++m)
        for (int s = 0; s < 3; ++s)
          if (eps3(r, m, s) != 0) acc += double(eps3(r, m, s)) * C(m, s, i);
      check(r, i) = 0.5 * acc;
    }
  Rank3TensorC rem;
  for (int m = 0; m < 3; ++m)
    for (int s = 0; s < 3; ++s)
      for (int i = 0; i < 3; ++i) {
        cplx skew = 0.0;
        for (int r = 0; r < 3; ++r)
          if (eps3(m, s, r) != 0) skew += double(eps3(m, s, r)) * check(r, i);
        rem(m, s, i) = C(m, s, i) - skew;
      }
  return {check, rem};
}

Rank2TensorC assemble_C_check_direct(const std::array<DiscreteVectorField, 3>& theta,
                                     double alpha) {
  check_triple(theta, "assemble_C_check_direct");
  const double a3 = alpha * alpha * alpha;
  CMat3 c = CMat3::Zero();
  for (int i = 0; i < 3; ++i) {
    const cplx pref = -theta[size_t(i)].nu * a3 / 4.0;
    const CVec3 mom = field_check_moment(theta[size_t(i)]);
    for (int r = 0; r < 3; ++r) c(r, i) = pref * mom[r];
  }
  return Rank2TensorC(c);
}

Rank2TensorC assemble_N(const std::array<DiscreteVectorField, 3>& theta, double mu_r,
                        double alpha) {
  check_triple(theta, "assemble_N");
  const double a3 = alpha * alpha * alpha;
  const double pref = 1.0 - 1.0 / mu_r;
  CMat3 n = CMat3::Zero();
  for (int i = 0; i < 3; ++i) {
    const CVec3 cm = field_curl_moment(theta[size_t(i)]);
    for (int r = 0; r < 3; ++r) n(r, i) = a3 * pref * cm[r];
  }
  return Rank2TensorC(n);
}

Rank2TensorC assemble_M(const Rank2TensorC& N, const Rank2TensorC& C_check) {
  return N - C_check;
}

SymmetricAssembly assemble_M_symmetric(const std::array<DiscreteVectorField, 3>& theta,
                                       double alpha) {
  check_triple(theta, "assemble_M_symmetric");
  const auto& f0 = theta[0];
  if (std::abs(f0.nu) < 1e-300)
    throw std::invalid_argument(
        "assemble_M_symmetric: nu = 0 makes the 1/(4 nu) term singular; use the static path");
  const double mu_r = f0.mu_r;
  const double ka = f0.k_alpha;
  const double ka2 = ka * ka;
  const cplx nu = f0.nu;
  // eps_r/(eps_r - 1): in the eddy model this factor is the |eps_r| -> inf
  // limit, i.e. exactly 1.
  cplx factor_e;
  cplx mass_in_coeff;  // (k a)^2 eps_r inside B
  if (f0.variant == ThetaVariant::Eddy) {
    factor_e = 1.0;
    mass_in_coeff = nu;  // i nu_i
  } else {
    if (std::abs(f0.eps_r - 1.0) < 1e-14)
      throw std::invalid_argument("assemble_M_symmetric: eps_r = 1 is singular here");
    factor_e = f0.eps_r / (f0.eps_r - 1.0);
    mass_in_coeff = ka2 * f0.eps_r;
  }

  const double volB = f0.mesh->region_volume(0);
  const double a3 = alpha * alpha * alpha;

  CMat3 m = CMat3::Zero();
  double tail = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int i = r; i < 3; ++i) {
      const auto& fr = theta[size_t(r)];
      const auto& fi = theta[size_t(i)];
      const cplx S = pair_strong_integral(fi, fr);
      const cplx Kmu = pair_curl_integral_mu(fi, fr);
      const cplx Min = pair_dot_integral(fi, fr, 0);
      const cplx Mout = pair_dot_integral(fi, fr, 1);
      const cplx Ci = curl_axis_integral(fi, r);
      const cplx Cr = curl_axis_integral(fr, i);
      cplx v = S / (4.0 * nu);
      v += 0.25 * Kmu;
      v += (1.0 - 1.0 / mu_r) * volB * double(r == i);
      v -= 0.25 * (mass_in_coeff * Min + ka2 * Mout);
      v -= 0.5 * factor_e *
           (Kmu - ka2 * Mout - (1.0 - 1.0 / mu_r) * (Ci + Cr));
      v += 0.25 * factor_e * mass_in_coeff * Min;
      m(r, i) = a3 * v;
      m(i, r) = a3 * v;
    }
  }

  // Tail estimate: the exterior integrands decay like |xi|^-4; the truncated
  // remainder is on the order of the outermost-band contribution.
  const double R = f0.mesh->truncation_radius;
  {
    cplx acc = 0.0;
    for (size_t t = 0; t < f0.mesh->tets.size(); ++t) {
      if (f0.mesh->region[t] != 1) continue;
      const TetGeometry g = tet_geometry(*f0.mesh, int(t));
      const Vec3 c = 0.25 * (g.p[0] + g.p[1] + g.p[2] + g.p[3]);
      if (c.norm() < 0.8 * R) continue;
      const CVec3 c0 = theta[0].curl(int(t), g);
      acc += g.volume * (c0[0] * c0[0] + c0[1] * c0[1] + c0[2] * c0[2]);
    }
    tail = 0.25 * a3 * std::abs(acc);
  }

  SymmetricAssembly out;
  out.M = Rank2TensorC(m);
  out.truncation_tail = tail;
  return out;
}

TensorBundle assemble_bundle(const std::array<DiscreteVectorField, 3>& theta,
                             const std::array<DiscreteScalarField, 3>* vartheta,
                             const ContrastSet& cs, double omega, double alpha,
                             bool conducting) {
  check_triple(theta, "assemble_bundle");
  const auto& f0 = theta[0];
  const double k = cs.k_alpha / alpha;

  TensorBundle b;
  b.provenance.path = "fem";
  b.provenance.model = theta_variant_name(f0.variant);
  b.provenance.omega = omega;
  b.provenance.alpha = alpha;
  b.provenance.eps_r = cs.eps_r;
  b.provenance.mu_r = cs.mu_r;
  b.provenance.nu = f0.nu;
  b.provenance.k = k;
  b.provenance.conducting = conducting;
  b.provenance.mesh_desc = f0.mesh->shape_desc + " res " + std::to_string(f0.mesh->resolution);
  b.provenance.n_dofs = f0.diag.n_dofs;
  for (const auto& f : theta) {
    b.provenance.max_residual = std::max(b.provenance.max_residual, f.diag.residual);
    b.provenance.iterations += f.diag.iterations;
  }

  if (f0.variant == ThetaVariant::Eddy) {
    // The eddy model has A = B = 0 identically (integration by parts on the
    // simplified transmission problems).
    b.A = Rank2TensorC::Zero();
    b.B = Rank2TensorC::Zero();
  } else {
    b.A = assemble_A(theta, cs.eps_r, k, alpha);
    if (vartheta != nullptr) b.B = assemble_B(*vartheta, cs.eps_r, alpha);
  }

  if (f0.variant == ThetaVariant::Static) {
    b.C = Rank3TensorC();  // nu = 0: no cross-moment tensor
    b.C_check = Rank2TensorC::Zero();
    b.R = Rank3TensorC();
  } else {
    // -k^2 a^5 (eps_r - 1)/2 = -(a^3/2) nu with the model nu carried by the
    // fields (i nu_i for the eddy model).
    const double a3 = alpha * alpha * alpha;
    for (int i = 0; i < 3; ++i) {
      const cplx pref = -0.5 * a3 * theta[size_t(i)].nu;
      const CMat3 x = field_cross_moment(theta[size_t(i)]);
      for (int mm = 0; mm < 3; ++mm)
        for (int s = 0; s < 3; ++s) b.C(mm, s, i) = pref * x(mm, s);
    }
    auto [check, rem] = skew_decompose_C(b.C);
    b.C_check = check;
    b.R = rem;
    const Rank2TensorC direct = assemble_C_check_direct(theta, alpha);
    b.check_gap = (b.C_check - direct).norm();
  }
  b.R_msi_norm = b.R.norm();
  b.N = assemble_N(theta, cs.mu_r, alpha);
  b.M = assemble_M(b.N, b.C_check);
  return b;
}

TensorBundle oracle_bundle_sphere(const MaterialSpec& mat, const Excitation& exc,
                                  const ObjectPlacement& placement, SphereModel model,
                                  int order) {
  const ContrastSet cs = derive_contrasts(mat, exc, placement);
  const double alpha = placement.alpha;

  cplx m;
  if (model == SphereModel::Eddy) {
    m = sphere_mpt_eddy(cs.mu_r, cs.nu_i, alpha, order);
  } else {
    SphereSeriesParams p;
    p.mu_r = cs.mu_r;
    p.eps_r = cs.eps_r;
    p.k_alpha = cs.k_alpha;
    p.order = order;
    m = sphere_mpt_full(p, alpha);
  }

  TensorBundle b;
  b.provenance.path = "oracle";
  b.provenance.model = model == SphereModel::Eddy ? "eddy" : "full";
  b.provenance.omega = exc.omega;
  b.provenance.alpha = alpha;
  b.provenance.eps_r = cs.eps_r;
  b.provenance.mu_r = cs.mu_r;
  b.provenance.nu = model == SphereModel::Eddy ? cplx(0.0, cs.nu_i) : cs.nu;
  b.provenance.k = exc.k();
  b.provenance.conducting = mat.sigma_star > 0.0;
  b.provenance.mesh_desc = "analytic sphere";

  b.A = Rank2TensorC::Zero();
  b.B = model == SphereModel::Eddy ? Rank2TensorC::Zero()
                                   : polya_szego_sphere(cs.eps_r, alpha);
  b.C = Rank3TensorC();
  b.C_check = Rank2TensorC::Zero();
  b.R = Rank3TensorC();
  b.R_msi_norm = 0.0;
  b.N = Rank2TensorC::Identity(m);
  b.M = b.N;
  return b;
}

namespace {

std::string f17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
std::string c17(cplx z) { return f17(z.real()) + " " + f17(z.imag()); }

}  // namespace

void write_bundle(std::ostream& os, const TensorBundle& b) {
  os << "tensorbundle v1\n";
  const auto& p = b.provenance;
  os << "path " << p.path << "\n";
  os << "model " << p.model << "\n";
  os << "omega " << f17(p.omega) << "\n";
  os << "alpha " << f17(p.alpha) << "\n";
  os << "eps_r " << c17(p.eps_r) << "\n";
  os << "mu_r " << f17(p.mu_r) << "\n";
  os << "nu " << c17(p.nu) << "\n";
  os << "k " << f17(p.k) << "\n";
  os << "conducting " << (p.conducting ? 1 : 0) << "\n";
  os << "mesh " << (p.mesh_desc.empty() ? "-" : p.mesh_desc) << "\n";
  os << "n_dofs " << p.n_dofs << "\n";
  os << "max_residual " << f17(p.max_residual) << "\n";
  os << "iterations " << p.iterations << "\n";
  auto rank2 = [&](const char* name, const Rank2TensorC& t) {
    os << name << "\n";
    for (int r = 0; r < 3; ++r)
      for (int i = 0; i < 3; ++i) os << c17(t(r, i)) << "\n";
  };
  rank2("A", b.A);
  rank2("B", b.B);
  os << "C\n";
  for (int m = 0; m < 3; ++m)
    for (int s = 0; s < 3; ++s)
      for (int i = 0; i < 3; ++i) os << c17(b.C(m, s, i)) << "\n";
  rank2("C_check", b.C_check);
  rank2("N", b.N);
  rank2("M", b.M);
  os << "R_msi_norm " << f17(b.R_msi_norm) << "\n";
  os << "check_gap " << f17(b.check_gap) << "\n";
}

TensorBundle read_bundle(std::istream& is) {
  std::string line;
  auto next = [&]() {
    if (!std::getline(is, line)) throw std::runtime_error("read_bundle: truncated");
    return line;
  };
  if (next() != "tensorbundle v1") throw std::runtime_error("read_bundle: bad header");

  TensorBundle b;
  auto& p = b.provenance;
  auto kv = [&](const char* key) {
    next();
    const std::string prefix = std::string(key) + " ";
    if (line.rfind(prefix, 0) != 0)
      throw std::runtime_error(std::string("read_bundle: expected ") + key);
    return line.substr(prefix.size());
  };
  p.path = kv("path");
  p.model = kv("model");
  p.omega = std::stod(kv("omega"));
  p.alpha = std::stod(kv("alpha"));
  {
    std::istringstream ss(kv("eps_r"));
    double re, im;
    ss >> re >> im;
    p.eps_r = {re, im};
  }
  p.mu_r = std::stod(kv("mu_r"));
  {
    std::istringstream ss(kv("nu"));
    double re, im;
    ss >> re >> im;
    p.nu = {re, im};
  }
  p.k = std::stod(kv("k"));
  p.conducting = std::stoi(kv("conducting")) != 0;
  p.mesh_desc = kv("mesh");
  p.n_dofs = std::stoi(kv("n_dofs"));
  p.max_residual = std::stod(kv("max_residual"));
  p.iterations = std::stoi(kv("iterations"));

  auto read_c = [&]() {
    std::istringstream ss(next());
    double re, im;
    if (!(ss >> re >> im)) throw std::runtime_error("read_bundle: bad complex entry");
    return cplx(re, im);
  };
  auto rank2 = [&](const char* name, Rank2TensorC& t) {
    if (next() != name) throw std::runtime_error(std::string("read_bundle: expected ") + name);
    for (int r = 0; r < 3; ++r)
      for (int i = 0; i < 3; ++i) t(r, i) = read_c();
  };
  rank2("A", b.A);
  rank2("B", b.B);
  if (next() != "C") throw std::runtime_error("read_bundle: expected C");
  for (int m = 0; m < 3; ++m)
    for (int s = 0; s < 3; ++s)
      for (int i = 0; i < 3; ++i) b.C(m, s, i) = read_c();
  rank2("C_check", b.C_check);
  rank2("N", b.N);
  rank2("M", b.M);
  b.R_msi_norm = std::stod(kv("R_msi_norm"));
  b.check_gap = std::stod(kv("check_gap"));
  auto [check, rem] = skew_decompose_C(b.C);
  (void)check;
  b.R = rem;
  return b;
}

}  // namespace mpt
