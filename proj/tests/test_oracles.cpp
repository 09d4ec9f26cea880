#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpt/oracles.hpp"

using namespace mpt;

TEST_CASE("scaled Bessel forms match the series across the crossover") {
  // Values just below and above |u| = 10 must agree between the two branches.
  for (const cplx u : {cplx(9.9, 0.1), cplx(7.0, 7.0), cplx(0.3, 9.8)}) {
    const auto s = detail::scaled_bessel(u * 0.99999, 60);
    const auto c = detail::scaled_bessel(u * 1.00001, 60);
    CHECK(std::abs(s.j0 - c.j0) <= 1e-9 * std::abs(c.j0));
    CHECK(std::abs(s.j1 - c.j1) <= 1e-9 * std::abs(c.j1));
    CHECK(std::abs(s.j2 - c.j2) <= 1e-8 * std::max(std::abs(c.j2), 1e-3));
  }
}

TEST_CASE("no-contrast sphere has zero dipole coefficient") {
  SphereSeriesParams p;
  p.mu_r = 1.0;
  p.eps_r = 1.0;
  p.k_alpha = 0.3;
  CHECK(std::abs(sphere_mpt_full(p, 1.0)) < 1e-12);
  CHECK(std::abs(sphere_mpt_eddy(1.0, 0.0, 1.0)) < 1e-14);
}

TEST_CASE("static limit recovers the Polya-Szego sphere coefficient") {
  SUBCASE("mu_r = 2 gives pi") {
    SphereSeriesParams p;
    p.mu_r = 2.0;
    p.eps_r = 1.0;
    p.k_alpha = 1e-6;  // kappa -> 0
    const cplx m = sphere_mpt_full(p, 1.0);
    CHECK(std::abs(m - cplx(M_PI, 0.0)) <= 1e-6 * M_PI);
  }
  SUBCASE("eddy model, nu_i = 0, mu_r = 100") {
    const cplx m = sphere_mpt_eddy(100.0, 0.0, 1.0);
    const double expected = 4.0 * M_PI * 99.0 / 102.0;
    CHECK(m.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(m.imag() == 0.0);
    CHECK(expected == doctest::Approx(12.196).epsilon(1e-3));
  }
}

TEST_CASE("high-frequency limit tends to the perfect-conductor value -2 pi") {
  // Evaluate at growing |kappa| along the eddy branch and extrapolate.
  double prev_gap = 1e9;
  for (double nu_i : {1e6, 1e8, 1e10}) {
    const cplx m = sphere_mpt_eddy(2.0, nu_i, 1.0);
    const double gap = std::abs(m - cplx(-2.0 * M_PI, 0.0));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 2e-2 * 2.0 * M_PI);
}

TEST_CASE("small conducting sphere: m ~ 2 pi i nu_i / 15 at mu_r = 1") {
  const double nu_i = 1e-4;
  const cplx m = sphere_mpt_eddy(1.0, nu_i, 1.0);
  const cplx expected = 2.0 * M_PI * I * nu_i / 15.0;
  CHECK(std::abs(m - expected) <= 2e-2 * std::abs(expected));
}

TEST_CASE("doubling the truncation order leaves the coefficient unchanged") {
  for (double ka : {0.01, 0.4, 3.0}) {
    for (double q : {1.0, 40.0, 2000.0}) {
      SphereSeriesParams p;
      p.mu_r = 20.0;
      p.eps_r = cplx(2.0, q);
      p.k_alpha = ka;
      if (std::abs(p.kappa()) > 50.0) continue;
      p.order = 30;
      const cplx m30 = sphere_mpt_full(p, 1.0);
      p.order = 60;
      const cplx m60 = sphere_mpt_full(p, 1.0);
      CHECK(std::abs(m30 - m60) <= 1e-10 * std::abs(m60));
    }
  }
}

TEST_CASE("both sphere series reduce to Polya-Szego as frequency -> 0") {
  const double mu_r = 37.0;
  const cplx ps = polya_szego_sphere(cplx(mu_r, 0.0), 1.0)(0, 0);
  {
    SphereSeriesParams p;
    p.mu_r = mu_r;
    p.eps_r = 1.0;
    p.k_alpha = 1e-4 / std::sqrt(mu_r);  // kappa = 1e-4
    CHECK(std::abs(sphere_mpt_full(p, 1.0) - ps) <= 1e-6 * std::abs(ps));
  }
  {
    const double nu_i = 1e-8 / mu_r;  // |kappa|^2 = 1e-8
    CHECK(std::abs(sphere_mpt_eddy(mu_r, nu_i, 1.0) - ps) <= 1e-6 * std::abs(ps));
  }
}

TEST_CASE("polya_szego_sphere closed forms") {
  CHECK(polya_szego_sphere(cplx(1.0, 0.0), 1.0).norm() == 0.0);
  const Rank2TensorC t2 = polya_szego_sphere(cplx(2.0, 0.0), 1.0);
  CHECK(t2(0, 0).real() == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(t2.is_isotropic(1e-14));
  const Rank2TensorC tbig = polya_szego_sphere(cplx(1e6, 0.0), 1.0);
  CHECK(std::abs(tbig(0, 0) - 4.0 * M_PI * (1.0 - 3.0 / (1e6 + 2.0))) <= 1e-5);
  CHECK_THROWS_AS(polya_szego_sphere(cplx(-2.0, 0.0), 1.0), std::domain_error);
}

TEST_CASE("alpha^3 scaling of the Polya-Szego outputs is exact") {
  const cplx c(3.0, 0.5);
  const Rank2TensorC t1 = polya_szego_sphere(c, 0.7);
  const Rank2TensorC t2 = polya_szego_sphere(c, 1.4);
  CHECK(std::abs(t2(0, 0) / t1(0, 0) - 8.0) <= 1e-12);
  const Vec3 ax(1.0, 0.5, 0.5);
  const Rank2TensorC e1 = polya_szego_ellipsoid(ax, c, 0.7);
  const Rank2TensorC e2 = polya_szego_ellipsoid(ax, c, 1.4);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(e2(j, j) / e1(j, j) - 8.0) <= 1e-12);
}

TEST_CASE("depolarization factors") {
  SUBCASE("sphere: all 1/3") {
    const Vec3 L = depolarization_factors(Vec3::Ones());
    for (int j = 0; j < 3; ++j) CHECK(L[j] == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
    CHECK(std::abs(L.sum() - 1.0) <= 1e-10);
  }
  SUBCASE("prolate 2:1:1: long axis below 1/3, short above") {
    const Vec3 L = depolarization_factors(Vec3(1.0, 0.5, 0.5));
    CHECK(L[0] < 1.0 / 3.0);
    CHECK(L[1] > 1.0 / 3.0);
    CHECK(L[2] == doctest::Approx(L[1]).epsilon(1e-10));
    CHECK(std::abs(L.sum() - 1.0) <= 1e-10);
  }
}

TEST_CASE("degenerate ellipsoid matches the sphere closed form") {
  const cplx c(2.0, 0.0);
  const Rank2TensorC s = polya_szego_sphere(c, 1.0);
  const Rank2TensorC e = polya_szego_ellipsoid(Vec3::Ones(), c, 1.0);
  CHECK((s.mat() - e.mat()).norm() <= 1e-8 * s.norm());
}

TEST_CASE("interior fields: zero contrast reproduces the background") {
  SphereSeriesParams p;
  p.mu_r = 1.0;
  p.eps_r = 1.0;
  p.k_alpha = 1e-9;
  const CVec3 h(0.0, 0.0, 2.0);
  const SphereInteriorFields f(p, 0.5, Vec3::Zero(), h);
  for (const Vec3& y : {Vec3(0.1, 0.0, 0.2), Vec3(-0.3, 0.2, 0.0), Vec3(0, 0, 0)}) {
    CHECK((f.H(y) - h).norm() <= 1e-6 * h.norm());
  }
}

TEST_CASE("interior fields: static permeable sphere is uniform 3/(mu_r+2) H0") {
  SphereSeriesParams p;
  p.mu_r = 5.0;
  p.eps_r = 1.0;
  p.k_alpha = 0.0;
  const CVec3 h(1.0, -2.0, 0.5);
  const SphereInteriorFields f(p, 2.0, Vec3(1.0, 1.0, 1.0), h);
  const CVec3 expected = 3.0 / 7.0 * h;
  for (const Vec3& y :
       {Vec3(1.0, 1.0, 1.0), Vec3(2.5, 1.0, 0.5), Vec3(1.1, 2.2, 0.2)}) {
    CHECK((f.H(y) - expected).norm() <= 1e-12 * expected.norm());
    CHECK(f.E(y).norm() == 0.0);
  }
}

TEST_CASE("skin effect: interior |H| decays monotonically from boundary inward") {
  SphereSeriesParams p;
  p.mu_r = 100.0;
  p.eps_r = cplx(1.0, 1e9);
  p.k_alpha = 1e-3;
  CHECK(std::abs(p.kappa()) > 50.0);
  const CVec3 h(0.0, 0.0, 1.0);
  const SphereInteriorFields f(p, 1.0, Vec3::Zero(), h);
  const Vec3 dir = Vec3(1.0, 0.4, 0.8).normalized();
  double prev = -1.0;
  for (double r = 0.3; r <= 0.999; r += 0.0331) {
    const double mag = f.H(r * dir).norm();
    CHECK(mag > prev);
    prev = mag;
  }
}

TEST_CASE("interior evaluator rejects exterior points") {
  SphereSeriesParams p;
  const SphereInteriorFields f(p, 1.0, Vec3::Zero(), CVec3(0, 0, 1));
  CHECK_THROWS_AS(f.H(Vec3(1.5, 0.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(f.E(Vec3(0.0, 1.2, 0.0)), std::domain_error);
}

TEST_CASE("gradient response static limits") {
  // beta(kappa -> 0) = 2 (1 - mu_r)/(2 mu_r + 3); PEC limit -> 2/3.
  SphereSeriesParams p;
  p.mu_r = 4.0;
  p.eps_r = 1.0;
  p.k_alpha = 1e-7;
  CMat3 g = CMat3::Zero();
  g(0, 2) = g(2, 0) = cplx(0.5, 0.0);
  const SphereInteriorFields f(p, 1.0, Vec3::Zero(), CVec3::Zero(), g);
  CHECK(std::abs(f.quadrupole_beta() - cplx(2.0 * (1.0 - 4.0) / 11.0, 0.0)) <= 1e-6);

  SphereSeriesParams pec;
  pec.mu_r = 1.0;
  pec.eps_r = cplx(1.0, 1e10);
  pec.k_alpha = 1e-2;
  const SphereInteriorFields fp(pec, 1.0, Vec3::Zero(), CVec3::Zero(), g);
  CHECK(std::abs(fp.quadrupole_beta() - cplx(2.0 / 3.0, 0.0)) <= 2e-2);
}

TEST_CASE("static gradient mode matches 5/(2 mu_r + 3) G xi inside") {
  SphereSeriesParams p;
  p.mu_r = 4.0;
  p.k_alpha = 0.0;
  CMat3 g = CMat3::Zero();
  g(0, 0) = 1.0;
  g(1, 1) = -1.0;  // traceless diagonal gradient
  const double alpha = 0.5;
  const SphereInteriorFields f(p, alpha, Vec3::Zero(), CVec3::Zero(), g);
  const Vec3 y(0.1, 0.15, -0.2);
  const CVec3 expected = 5.0 / 11.0 * (g * y.cast<cplx>());
  CHECK((f.H(y) - expected).norm() <= 1e-12 * std::max(1e-12, expected.norm()));
}
