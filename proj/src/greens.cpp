#include "mpt/greens.hpp"

namespace mpt {

namespace {
constexpr double kMinSeparation = 1e-12;
}

GreensDerivatives greens_eval(const Vec3& x, const Vec3& z, double k) {
  const Vec3 d = x - z;
  const double r = d.norm();
  if (r < kMinSeparation)
    throw std::domain_error("greens_eval: evaluation at (or too close to) the singularity x = z");

  const Vec3 rhat = d / r;
  const Mat3 rr = rhat * rhat.transpose();
  const Mat3 proj3 = 3.0 * rr - Mat3::Identity();

  GreensDerivatives g;
  if (k == 0.0) {
    // Laplace branch, kept separate so the static kernels are free of
    // oscillatory-factor rounding.
    const double v = 1.0 / (4.0 * M_PI * r);
    g.value = v;
    g.grad = (-v / r) * rhat;
    g.hess = (v / (r * r)) * proj3;
    return g;
  }

  const cplx phase = std::exp(I * k * r);
  g.value = phase / (4.0 * M_PI * r);
  g.grad = (phase / (4.0 * M_PI * r)) * (I * k - 1.0 / r) * rhat;
  g.hess = (phase / (4.0 * M_PI)) *
           ((1.0 / (r * r * r)) * proj3.cast<cplx>() -
            (I * k / (r * r)) * proj3.cast<cplx>() -
            (k * k / r) * rr.cast<cplx>());
  return g;
}

double greens_check_fd(const Vec3& x, const Vec3& z, double k, double h) {
  const double r = (x - z).norm();
  if (r < kMinSeparation)
    throw std::domain_error("greens_check_fd: x = z");
  if (!(h > 0.0) || h >= r / 10.0)
    throw std::invalid_argument("greens_check_fd: step h must satisfy 0 < h < r/10");

  const GreensDerivatives g = greens_eval(x, z, k);
  const double vscale = std::abs(g.value) / r;
  const double gscale = g.grad.norm() / r + vscale;

  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    Vec3 dx = Vec3::Zero();
    dx[j] = h;
    const GreensDerivatives gp = greens_eval(x + dx, z, k);
    const GreensDerivatives gm = greens_eval(x - dx, z, k);

    const cplx dval = (gp.value - gm.value) / (2.0 * h);
    worst = std::max(worst, std::abs(dval - g.grad[j]) / vscale);

    const CVec3 dgrad = (gp.grad - gm.grad) / (2.0 * h);
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(dgrad[i] - g.hess(i, j)) / gscale);
  }
  return worst;
}

}  // namespace mpt
