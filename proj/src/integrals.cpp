#include "mpt/integrals.hpp"

namespace mpt {

namespace {

template <typename F>
void for_each_interior_qp(const Mesh& mesh, F&& body) {
  const auto& rule = tet_quadrature();
  for (size_t t = 0; t < mesh.tets.size(); ++t) {
    if (mesh.region[t] != 0) continue;
    const TetGeometry g = tet_geometry(mesh, int(t));
    for (const auto& qp : rule) {
      Vec3 x = Vec3::Zero();
      for (int j = 0; j < 4; ++j) x += qp.lambda[j] * g.p[j];
      body(int(t), g, qp, x);
    }
  }
}

}  // namespace

CVec3 field_moment(const DiscreteVectorField& f) {
  const Vec3 ei = Vec3::Unit(f.axis);
  CVec3 acc = CVec3::Zero();
  for_each_interior_qp(*f.mesh, [&](int t, const TetGeometry& g, const TetQuadPoint& qp,
                                    const Vec3& x) {
    acc += qp.weight * g.volume * (ei.cross(x).cast<cplx>() + f.value(t, g, x));
  });
  return acc;
}

CVec3 field_curl_moment(const DiscreteVectorField& f) {
  const Vec3 ei = Vec3::Unit(f.axis);
  CVec3 acc = CVec3::Zero();
  for (size_t t = 0; t < f.mesh->tets.size(); ++t) {
    if (f.mesh->region[t] != 0) continue;
    const TetGeometry g = tet_geometry(*f.mesh, int(t));
    acc += g.volume * (ei.cast<cplx>() + 0.5 * f.curl(int(t), g));
  }
  return acc;
}

CMat3 field_cross_moment(const DiscreteVectorField& f) {
  const Vec3 ei = Vec3::Unit(f.axis);
  CMat3 acc = CMat3::Zero();
  for_each_interior_qp(*f.mesh, [&](int t, const TetGeometry& g, const TetQuadPoint& qp,
                                    const Vec3& x) {
    const CVec3 v = ei.cross(x).cast<cplx>() + f.value(t, g, x);
    const double w = qp.weight * g.volume;
    for (int m = 0; m < 3; ++m)
      for (int s = 0; s < 3; ++s) acc(m, s) += w * x[m] * v[s];
  });
  return acc;
}

CVec3 field_check_moment(const DiscreteVectorField& f) {
  const Vec3 ei = Vec3::Unit(f.axis);
  CVec3 acc = CVec3::Zero();
  for_each_interior_qp(*f.mesh, [&](int t, const TetGeometry& g, const TetQuadPoint& qp,
                                    const Vec3& x) {
    const CVec3 v = f.value(t, g, x) + ei.cross(x).cast<cplx>();
    acc += qp.weight * g.volume * x.cast<cplx>().cross(v);
  });
  return acc;
}

CVec3 field_integrals(const DiscreteVectorField& f, FieldIntegralKind kind, int m) {
  switch (kind) {
    case FieldIntegralKind::Moment: return field_moment(f);
    case FieldIntegralKind::CurlMoment: return field_curl_moment(f);
    case FieldIntegralKind::CrossMomentM: {
      if (m < 0 || m > 2)
        throw std::invalid_argument("field_integrals: cross-moment index m must be 0..2");
      return field_cross_moment(f).row(m);
    }
  }
  throw std::invalid_argument("field_integrals: unknown integral kind");
}

cplx pair_dot_integral(const DiscreteVectorField& a, const DiscreteVectorField& b,
                       int region) {
  if (a.mesh.get() != b.mesh.get())
    throw std::invalid_argument("pair_dot_integral: fields on different meshes");
  const auto& rule = tet_quadrature();
  cplx acc = 0.0;
  for (size_t t = 0; t < a.mesh->tets.size(); ++t) {
    if (region >= 0 && a.mesh->region[t] != region) continue;
    const TetGeometry g = tet_geometry(*a.mesh, int(t));
    for (const auto& qp : rule) {
      Vec3 x = Vec3::Zero();
      for (int j = 0; j < 4; ++j) x += qp.lambda[j] * g.p[j];
      const CVec3 va = a.value(int(t), g, x), vb = b.value(int(t), g, x);
      acc += qp.weight * g.volume * (va[0] * vb[0] + va[1] * vb[1] + va[2] * vb[2]);
    }
  }
  return acc;
}

cplx pair_curl_integral_mu(const DiscreteVectorField& a, const DiscreteVectorField& b) {
  if (a.mesh.get() != b.mesh.get())
    throw std::invalid_argument("pair_curl_integral_mu: fields on different meshes");
  cplx acc = 0.0;
  for (size_t t = 0; t < a.mesh->tets.size(); ++t) {
    const TetGeometry g = tet_geometry(*a.mesh, int(t));
    const double mu_inv = a.mesh->region[t] == 0 ? 1.0 / a.mu_r : 1.0;
    const CVec3 ca = a.curl(int(t), g), cb = b.curl(int(t), g);
    acc += mu_inv * g.volume * (ca[0] * cb[0] + ca[1] * cb[1] + ca[2] * cb[2]);
  }
  return acc;
}

cplx curl_axis_integral(const DiscreteVectorField& a, int axis_r) {
  cplx acc = 0.0;
  for (size_t t = 0; t < a.mesh->tets.size(); ++t) {
    if (a.mesh->region[t] != 0) continue;
    const TetGeometry g = tet_geometry(*a.mesh, int(t));
    acc += g.volume * a.curl(int(t), g)[axis_r];
  }
  return acc;
}

cplx pair_strong_integral(const DiscreteVectorField& a, const DiscreteVectorField& b) {
  if (a.mesh.get() != b.mesh.get())
    throw std::invalid_argument("pair_strong_integral: fields on different meshes");
  // s_i = (k a)^2 eps_r theta_i + nu (e_i x xi) in B; for the eddy variant
  // (k a)^2 eps_r reduces to i nu_i.
  const cplx ca = (a.variant == ThetaVariant::Eddy) ? a.nu : a.k_alpha * a.k_alpha * a.eps_r;
  const cplx cb = (b.variant == ThetaVariant::Eddy) ? b.nu : b.k_alpha * b.k_alpha * b.eps_r;
  const Vec3 ea = Vec3::Unit(a.axis), eb = Vec3::Unit(b.axis);
  const auto& rule = tet_quadrature();
  cplx acc = 0.0;
  for (size_t t = 0; t < a.mesh->tets.size(); ++t) {
    if (a.mesh->region[t] != 0) continue;
    const TetGeometry g = tet_geometry(*a.mesh, int(t));
    for (const auto& qp : rule) {
      Vec3 x = Vec3::Zero();
      for (int j = 0; j < 4; ++j) x += qp.lambda[j] * g.p[j];
      const CVec3 sa = ca * a.value(int(t), g, x) + a.nu * ea.cross(x).cast<cplx>();
      const CVec3 sb = cb * b.value(int(t), g, x) + b.nu * eb.cross(x).cast<cplx>();
      acc += qp.weight * g.volume * (sa[0] * sb[0] + sa[1] * sb[1] + sa[2] * sb[2]);
    }
  }
  return acc;
}

CVec3 scalar_grad_moment(const DiscreteScalarField& f) {
  CVec3 acc = CVec3::Zero();
  for (size_t t = 0; t < f.mesh->tets.size(); ++t) {
    if (f.mesh->region[t] != 0) continue;
    const TetGeometry g = tet_geometry(*f.mesh, int(t));
    acc += g.volume * f.grad(int(t), g);
  }
  return acc;
}

}  // namespace mpt
