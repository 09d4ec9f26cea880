#include "mpt/background.hpp"

namespace mpt {

namespace {

// Real-argument spherical Bessel helpers with small-u series, used by the
// uniform mode (u = k r is real and modest here).
struct JPair {
  double j0, j1_over_u, j1;
};

JPair jpair(double u) {
  JPair p;
  if (std::abs(u) < 1e-3) {
    const double u2 = u * u;
    p.j0 = 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0);
    p.j1_over_u = 1.0 / 3.0 - u2 / 30.0 * (1.0 - u2 / 28.0);
    p.j1 = u * p.j1_over_u;
    return p;
  }
  p.j0 = std::sin(u) / u;
  p.j1 = std::sin(u) / (u * u) - std::cos(u) / u;
  p.j1_over_u = p.j1 / u;
  return p;
}

// A(u) = j0 - j1/u and B(u) = 3 j1/u - j0, the radial profiles of the
// uniform mode: H = (3/2) [A h + B (rhat.h) rhat].
void mode_profiles(double u, double& A, double& B) {
  const JPair p = jpair(u);
  A = p.j0 - p.j1_over_u;
  B = 3.0 * p.j1_over_u - p.j0;
}

// dA/du and dB/du (series near zero; closed forms elsewhere).
void mode_profile_derivs(double u, double& dA, double& dB) {
  if (std::abs(u) < 1e-3) {
    dA = -4.0 * u / 15.0;
    dB = 2.0 * u / 15.0;
    return;
  }
  const JPair p = jpair(u);
  // j0' = -j1; (j1/u)' = (j1' - j1/u)/u with j1' = j0 - 2 j1/u.
  const double j1p = p.j0 - 2.0 * p.j1_over_u;
  const double j1u_p = (j1p - p.j1_over_u) / u;
  dA = -p.j1 - j1u_p;
  dB = 3.0 * j1u_p + p.j1;
}

}  // namespace

BackgroundField BackgroundField::uniform_h(const CVec3& h, double k, const Vec3& center) {
  if (!(k >= 0.0)) throw std::invalid_argument("BackgroundField: k must be >= 0");
  BackgroundField b;
  b.kind_ = Kind::UniformH;
  b.k_ = k;
  b.h_ = h;
  b.center_ = center;
  return b;
}

BackgroundField BackgroundField::plane_wave(const Vec3& direction, const Vec3& polarization,
                                            cplx amplitude, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("BackgroundField: plane wave needs k > 0");
  BackgroundField b;
  b.kind_ = Kind::PlaneWave;
  b.k_ = k;
  b.dir_ = direction.normalized();
  Vec3 p = polarization - polarization.dot(b.dir_) * b.dir_;
  if (p.norm() < 1e-14)
    throw std::invalid_argument("BackgroundField: polarization parallel to direction");
  b.pol_ = p.normalized();
  b.amp_ = amplitude;
  return b;
}

CVec3 BackgroundField::H(const Vec3& x) const {
  if (kind_ == Kind::PlaneWave) {
    const cplx phase = amp_ * std::exp(I * k_ * dir_.dot(x));
    return phase * dir_.cross(pol_).cast<cplx>();
  }
  const Vec3 d = x - center_;
  const double r = d.norm();
  if (k_ == 0.0 || r == 0.0) return h_;
  const double u = k_ * r;
  double A, B;
  mode_profiles(u, A, B);
  const Vec3 rh = d / r;
  const cplx rh_h = rh.cast<cplx>().conjugate().dot(h_);
  return 1.5 * (A * h_ + B * rh_h * rh.cast<cplx>());
}

CVec3 BackgroundField::E(const Vec3& x) const {
  if (kind_ == Kind::PlaneWave) {
    const cplx phase = amp_ * std::exp(I * k_ * dir_.dot(x));
    return phase * pol_.cast<cplx>();
  }
  if (k_ == 0.0) return CVec3::Zero();
  const Vec3 d = x - center_;
  const double r = d.norm();
  if (r == 0.0) return CVec3::Zero();
  const double u = k_ * r;
  const JPair p = jpair(u);
  return -1.5 * I * p.j1 * (d / r).cast<cplx>().cross(h_);
}

CMat3 BackgroundField::H_jacobian(const Vec3& x) const {
  if (kind_ == Kind::PlaneWave) {
    const CVec3 h = H(x);
    return I * k_ * h * dir_.cast<cplx>().transpose();
  }
  const Vec3 d = x - center_;
  const double r = d.norm();
  if (k_ == 0.0) return CMat3::Zero();
  if (r < 1e-14) return CMat3::Zero();  // DH vanishes at the centre
  const double u = k_ * r;
  double A, B, dA, dB;
  mode_profiles(u, A, B);
  mode_profile_derivs(u, dA, dB);
  const Vec3 rh = d / r;
  const cplx rh_h = rh.cast<cplx>().conjugate().dot(h_);
  CMat3 out = CMat3::Zero();
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      cplx v = dA * k_ * rh[q] * h_[p];
      v += dB * k_ * rh[q] * rh_h * rh[p];
      cplx drh_h = 0.0;  // d/dx_q (rhat.h) = ((delta - rhat rhat)/r h)_q
      for (int j = 0; j < 3; ++j) drh_h += (double(j == q) - rh[j] * rh[q]) / r * h_[j];
      v += B * (drh_h * rh[p] + rh_h * (double(p == q) - rh[p] * rh[q]) / r);
      out(p, q) = 1.5 * v;
    }
  }
  return out;
}

CMat3 BackgroundField::E_jacobian(const Vec3& x) const {
  if (kind_ == Kind::PlaneWave) {
    const CVec3 e = E(x);
    return I * k_ * e * dir_.cast<cplx>().transpose();
  }
  if (k_ == 0.0) return CMat3::Zero();
  const Vec3 d = x - center_;
  const double r = d.norm();
  if (r < 1e-14) {
    // E ~ (i k / 2) h x r near the centre.
    CMat3 out = CMat3::Zero();
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        for (int l = 0; l < 3; ++l)
          out(p, q) += 0.5 * I * k_ * double(eps3(p, l, q)) * h_[l] * cplx(1.0, 0.0);
    // (h x e_q)_p = eps_{p l q} h_l
    return out;
  }
  const double u = k_ * r;
  const JPair p = jpair(u);
  const double j1p = p.j0 - 2.0 * p.j1_over_u;
  const Vec3 rh = d / r;
  const CVec3 rxh = rh.cast<cplx>().cross(h_);
  CMat3 out = CMat3::Zero();
  for (int pp = 0; pp < 3; ++pp) {
    for (int q = 0; q < 3; ++q) {
      cplx v = j1p * k_ * rh[q] * rxh[pp];
      // d/dx_q (rhat x h)_p = eps_{pjl} ((delta_jq - rhat_j rhat_q)/r) h_l
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          if (eps3(pp, j, l) != 0)
            v += p.j1 * double(eps3(pp, j, l)) * (double(j == q) - rh[j] * rh[q]) / r * h_[l];
      out(pp, q) = -1.5 * I * v;
    }
  }
  return out;
}

BackgroundField::Norms BackgroundField::norms_over(const Vec3& z, double alpha) const {
  Norms n;
  if (kind_ == Kind::PlaneWave) {
    const double hmag = std::abs(amp_);
    n.H0_W2inf = hmag * (1.0 + k_ + k_ * k_);
    n.E0_W1inf = hmag * (1.0 + k_);
    return n;
  }
  // Sample the closed radial profiles over the ball; second derivatives of H
  // via a central difference of the closed-form Jacobian.
  const double hmag = h_.norm();
  if (k_ == 0.0 || hmag == 0.0) {
    n.H0_W2inf = hmag;
    n.E0_W1inf = 0.0;
    return n;
  }
  double supH = 0.0, supDH = 0.0, supD2H = 0.0, supE = 0.0, supDE = 0.0;
  const Vec3 dir = Vec3(1.0, 0.7, -0.4).normalized();  // generic ray
  const double fd = std::max(1e-6, 1e-6 * alpha);
  for (int s = 0; s <= 32; ++s) {
    const Vec3 x = z + (alpha * double(s) / 32.0) * dir;
    supH = std::max(supH, H(x).norm());
    supE = std::max(supE, E(x).norm());
    supDH = std::max(supDH, H_jacobian(x).norm());
    supDE = std::max(supDE, E_jacobian(x).norm());
    double d2 = 0.0;
    for (int q = 0; q < 3; ++q) {
      Vec3 dx = Vec3::Zero();
      dx[q] = fd;
      d2 += ((H_jacobian(x + dx) - H_jacobian(x - dx)) / (2.0 * fd)).norm();
    }
    supD2H = std::max(supD2H, d2);
  }
  n.H0_W2inf = supH + supDH + supD2H;
  n.E0_W1inf = supE + supDE;
  return n;
}

}  // namespace mpt
