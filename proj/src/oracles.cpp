#include "mpt/oracles.hpp"

#include <functional>

namespace mpt {

namespace detail {

namespace {
constexpr double kSeriesCrossover = 10.0;

// Power series j_n(u) = u^n sum_m (-u^2/2)^m / (m! (2n+2m+1)!!).
cplx series_jn(int n, cplx u, int order) {
  double dfact = 1.0;  // (2n+1)!!
  for (int q = 1; q <= 2 * n + 1; q += 2) dfact *= q;
  cplx term = 1.0 / dfact;
  cplx sum = term;
  const cplx mz = -0.5 * u * u;
  cplx last = term;
  for (int m = 1; m <= order; ++m) {
    term *= mz / (double(m) * double(2 * n + 2 * m + 1));
    sum += term;
    last = term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  if (std::abs(last) > 1e-12 * std::max(1e-300, std::abs(sum)))
    throw std::runtime_error(
        "spherical Bessel series not converged; increase truncation order");
  cplx upow = 1.0;
  for (int q = 0; q < n; ++q) upow *= u;
  return upow * sum;
}
}  // namespace

ScaledBessel scaled_bessel(cplx u, int order) {
  if (u.imag() < -1e-300)
    throw std::domain_error("scaled_bessel: requires Im(u) >= 0");
  ScaledBessel out;
  if (std::abs(u) < kSeriesCrossover) {
    const cplx e = std::exp(I * u);  // |e| <= 1 here
    out.j0 = series_jn(0, u, order) * e;
    out.j1 = series_jn(1, u, order) * e;
    out.j2 = series_jn(2, u, order) * e;
    return out;
  }
  // Closed forms in w = e^{2iu}, |w| <= 1:
  //   sin(u) e^{iu} = (w - 1)/(2i),  cos(u) e^{iu} = (w + 1)/2.
  const cplx w = std::exp(2.0 * I * u);
  const cplx s = (w - 1.0) / (2.0 * I);
  const cplx c = (w + 1.0) / 2.0;
  out.j0 = s / u;
  out.j1 = s / (u * u) - c / u;
  out.j2 = (3.0 / (u * u * u) - 1.0 / u) * s - (3.0 / (u * u)) * c;
  return out;
}

}  // namespace detail

cplx SphereSeriesParams::kappa() const {
  cplx k = std::sqrt(cplx(k_alpha, 0.0) * k_alpha * eps_r * mu_r);
  if (k.imag() < 0.0) k = -k;
  return k;
}

namespace {

// Dipole coefficient of the unit sphere with interior wavenumber kappa and
// static exterior, from matching B_r and H_t across the surface:
//   m = 2 pi [ (2 mu_r + 1) j1(kappa) - kappa j0(kappa) ]
//          / [ (mu_r  - 1) j1(kappa) + kappa j0(kappa) ].
// The scaled jhat forms keep this finite for any Im(kappa) >= 0; the common
// e^{i kappa} factor cancels in the ratio.
cplx unit_sphere_dipole(cplx kappa, double mu_r, int order) {
  if (std::abs(kappa) == 0.0)
    return 4.0 * M_PI * (mu_r - 1.0) / (mu_r + 2.0);
  const auto jb = detail::scaled_bessel(kappa, order);
  const cplx num = (2.0 * mu_r + 1.0) * jb.j1 - kappa * jb.j0;
  const cplx den = (mu_r - 1.0) * jb.j1 + kappa * jb.j0;
  if (std::abs(den) == 0.0)
    throw std::runtime_error("sphere series: resonant dipole denominator");
  return 2.0 * M_PI * num / den;
}

// Quadrupole coefficient of the uniform-gradient response,
//   beta = (2/3) [ (1 - 3 mu_r) j2 + kappa j2' ] / [ (2 mu_r + 1) j2 + kappa j2' ]
// at kappa, with j2'(u) = j1(u) - (3/u) j2(u).
cplx unit_sphere_quadrupole(cplx kappa, double mu_r, int order) {
  if (std::abs(kappa) == 0.0)
    return 2.0 * (1.0 - mu_r) / (2.0 * mu_r + 3.0);
  const auto jb = detail::scaled_bessel(kappa, order);
  const cplx kj2p = kappa * jb.j1 - 3.0 * jb.j2;  // kappa * jhat2'(kappa)
  const cplx num = (1.0 - 3.0 * mu_r) * jb.j2 + kj2p;
  const cplx den = (2.0 * mu_r + 1.0) * jb.j2 + kj2p;
  if (std::abs(den) == 0.0)
    throw std::runtime_error("sphere series: resonant quadrupole denominator");
  return (2.0 / 3.0) * num / den;
}

}  // namespace

cplx sphere_mpt_full(const SphereSeriesParams& p, double alpha) {
  if (p.order < 1) throw std::invalid_argument("sphere_mpt_full: order must be >= 1");
  return alpha * alpha * alpha * unit_sphere_dipole(p.kappa(), p.mu_r, p.order);
}

cplx sphere_mpt_eddy(double mu_r, double nu_i, double alpha, int order) {
  if (nu_i < 0.0) throw std::domain_error("sphere_mpt_eddy: nu_i must be >= 0");
  cplx kappa = std::sqrt(I * nu_i * mu_r);
  if (kappa.imag() < 0.0) kappa = -kappa;
  return alpha * alpha * alpha * unit_sphere_dipole(kappa, mu_r, order);
}

Rank2TensorC polya_szego_sphere(cplx contrast, double alpha) {
  if (std::abs(contrast + 2.0) < 1e-14)
    throw std::domain_error("polya_szego_sphere: plasmonic singularity at contrast = -2");
  const cplx coeff =
      alpha * alpha * alpha * 4.0 * M_PI * (contrast - 1.0) / (contrast + 2.0);
  return Rank2TensorC::Identity(coeff);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fb, double fc, double whole, double tol,
                        int depth) {
  const double c = 0.5 * (a + b);
  const double d = 0.5 * (a + c), e = 0.5 * (c + b);
  const double fd = f(d), fe = f(e);
  const double left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
  const double right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
  if (depth > 40) throw std::runtime_error("depolarization quadrature failed to converge");
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, c, fa, fc, fd, left, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, c, b, fc, fb, fe, right, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fc = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
  return adaptive_simpson(f, a, b, fa, fb, fc, whole, tol, 0);
}

}  // namespace

Vec3 depolarization_factors(const Vec3& ax) {
  for (int j = 0; j < 3; ++j)
    if (!(ax[j] > 0.0)) throw std::domain_error("depolarization_factors: semi-axes must be > 0");
  const double abc = ax[0] * ax[1] * ax[2];
  const double g = std::cbrt(abc * abc);  // scale of the s -> tan^2 substitution

  // L_j = (abc/2) Int_0^inf ds / ((s + a_j^2) sqrt(prod_i (s + a_i^2))) with
  // s = g tan^2(phi); the transformed integrand is smooth on [0, pi/2].
  Vec3 L;
  for (int j = 0; j < 3; ++j) {
    auto integrand = [&](double phi) {
      const double sn = std::sin(phi), cs = std::cos(phi);
      const double q0 = g * sn * sn + ax[0] * ax[0] * cs * cs;
      const double q1 = g * sn * sn + ax[1] * ax[1] * cs * cs;
      const double q2 = g * sn * sn + ax[2] * ax[2] * cs * cs;
      const double qj = g * sn * sn + ax[j] * ax[j] * cs * cs;
      return 2.0 * g * sn * cs * cs / (qj * std::sqrt(q0 * q1 * q2));
    };
    L[j] = 0.5 * abc * integrate(integrand, 0.0, M_PI / 2.0, 1e-14);
  }
  if (std::abs(L.sum() - 1.0) > 1e-10)
    throw std::runtime_error("depolarization quadrature failed: sum of factors " +
                             std::to_string(L.sum()));
  return L;
}

Rank2TensorC polya_szego_ellipsoid(const Vec3& semi_axes, cplx contrast, double alpha) {
  const Vec3 L = depolarization_factors(semi_axes);
  const double vol = 4.0 * M_PI / 3.0 * semi_axes[0] * semi_axes[1] * semi_axes[2];
  CMat3 t = CMat3::Zero();
  for (int j = 0; j < 3; ++j) {
    const cplx den = 1.0 + (contrast - 1.0) * L[j];
    if (std::abs(den) < 1e-14)
      throw std::domain_error("polya_szego_ellipsoid: contrast on the singular set");
    t(j, j) = alpha * alpha * alpha * vol * (contrast - 1.0) / den;
  }
  return Rank2TensorC(t);
}

SphereInteriorFields::SphereInteriorFields(const SphereSeriesParams& p, double alpha,
                                           const Vec3& center, const CVec3& H0,
                                           const CMat3& H0_gradient)
    : p_(p), alpha_(alpha), center_(center), h_(H0), g_(H0_gradient) {
  if (!(alpha > 0.0)) throw std::domain_error("SphereInteriorFields: alpha must be > 0");
  const CMat3 sym = 0.5 * (g_ + g_.transpose());
  g_ = sym - (sym.trace() / 3.0) * CMat3::Identity();  // symmetric traceless part
  kappa_ = p_.kappa();
  m_unit_ = unit_sphere_dipole(kappa_, p_.mu_r, p_.order);
  beta_ = unit_sphere_quadrupole(kappa_, p_.mu_r, p_.order);
}

double SphereInteriorFields::tail_estimate() const {
  // Neglected excitation orders: quadratic Taylor remainder of the background
  // over the sphere and the electric-mode response, both O((k alpha)^2).
  const double ka = p_.k_alpha;
  return ka * ka * (h_.norm() + alpha_ * g_.norm());
}

CVec3 SphereInteriorFields::H(const Vec3& y) const {
  const Vec3 d = (y - center_) / alpha_;
  const double r = d.norm();
  if (r > 1.0 + 1e-12)
    throw std::domain_error("SphereInteriorFields: point outside the sphere");
  const CVec3 dc = d.cast<cplx>();

  if (std::abs(kappa_) == 0.0) {
    // Magnetostatic interior: uniform mode 3/(mu_r+2) h plus the linear
    // gradient mode 5/(2 mu_r + 3) (alpha g) d.
    return 3.0 / (p_.mu_r + 2.0) * h_ +
           alpha_ * 5.0 / (2.0 * p_.mu_r + 3.0) * (g_ * dc);
  }

  const cplx u = kappa_ * r;
  const auto jbu = detail::scaled_bessel(u, p_.order);
  const auto jbk = detail::scaled_bessel(kappa_, p_.order);
  const cplx carry = std::exp(I * (kappa_ - u));  // |carry| <= 1 inside

  cplx j0u = jbu.j0, j1u_over_u, j2u_over_u, j2pu;
  if (std::abs(u) < 1e-8) {
    const cplx e = std::exp(I * u);
    j1u_over_u = (1.0 / 3.0) * e;
    j2u_over_u = u / 15.0 * e;
    j2pu = 2.0 * u / 15.0 * e;
  } else {
    j1u_over_u = jbu.j1 / u;
    j2u_over_u = jbu.j2 / u;
    j2pu = jbu.j1 - 3.0 * jbu.j2 / u;
  }

  // n = 1: H = a kappa^2 [ (j0 - j1/u) h + (3 j1/u - j0)(rhat.h) rhat ],
  // a = (1 + 2 m/4pi) / (2 mu_r kappa j1(kappa)).
  const cplx mtilde = m_unit_ / (4.0 * M_PI);
  const cplx c1 =
      (1.0 + 2.0 * mtilde) * kappa_ / (2.0 * p_.mu_r) * carry / jbk.j1;
  const cplx rh = dc.conjugate().dot(h_);  // plain (not conjugated) d . h
  CVec3 field = c1 * ((j0u - j1u_over_u) * h_ + (3.0 * j1u_over_u - j0u) * rh * dc);

  // n = 2: H = c kappa [ (4 j2/u - 2 j2')(rhat.G rhat) rhat + 2 (j2/u + j2') G rhat ],
  // c j2(kappa) = (5/6) / [ (2 mu_r + 1) + kappa j2'(kappa)/j2(kappa) ];
  // the background gradient in unit coordinates is alpha g.
  if (g_.norm() > 0.0) {
    const cplx kj2pk = kappa_ * jbk.j1 - 3.0 * jbk.j2;
    const cplx cden = (2.0 * p_.mu_r + 1.0) * jbk.j2 + kj2pk;
    const cplx c2 = (5.0 / 6.0) * kappa_ * carry / cden;
    const CVec3 Gr = g_ * dc;
    const cplx rGr = dc.conjugate().dot(Gr);
    field += alpha_ * c2 *
             ((4.0 * j2u_over_u - 2.0 * j2pu) * rGr * dc + 2.0 * (j2u_over_u + j2pu) * Gr);
  }
  return field;
}

CVec3 SphereInteriorFields::E(const Vec3& y) const {
  const Vec3 d = (y - center_) / alpha_;
  const double r = d.norm();
  if (r > 1.0 + 1e-12)
    throw std::domain_error("SphereInteriorFields: point outside the sphere");
  if (std::abs(kappa_) == 0.0) return CVec3::Zero();
  const CVec3 dc = d.cast<cplx>();

  const cplx u = kappa_ * r;
  const auto jbu = detail::scaled_bessel(u, p_.order);
  const auto jbk = detail::scaled_bessel(kappa_, p_.order);
  const cplx carry = std::exp(I * (kappa_ - u));
  const cplx ikamu = I * p_.k_alpha * p_.mu_r;

  // n = 1: E = -i (k alpha) mu_r a kappa j1(u) (rhat x h).
  const cplx mtilde = m_unit_ / (4.0 * M_PI);
  const cplx e1 = -ikamu * (1.0 + 2.0 * mtilde) / (2.0 * p_.mu_r) * carry * jbu.j1 / jbk.j1;
  CVec3 field = e1 * dc.cross(h_);

  // n = 2: E = 2 i (k alpha) mu_r c j2(u) (G rhat) x rhat.
  if (g_.norm() > 0.0) {
    const cplx kj2pk = kappa_ * jbk.j1 - 3.0 * jbk.j2;
    const cplx cden = (2.0 * p_.mu_r + 1.0) * jbk.j2 + kj2pk;
    const cplx c2 = (5.0 / 6.0) * carry / cden;
    const CVec3 Gr = g_ * dc;
    field += alpha_ * 2.0 * ikamu * c2 * jbu.j2 * Gr.cross(dc);
  }
  return field;
}

}  // namespace mpt
