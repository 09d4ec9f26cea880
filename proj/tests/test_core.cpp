#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mpt/core.hpp"
#include "mpt/tensors.hpp"

using namespace mpt;

TEST_CASE("free-space object has vanishing contrasts") {
  MaterialSpec mat;  // defaults: eps0, mu0, sigma 0
  const Excitation exc{1e5};
  ObjectPlacement pl;
  pl.alpha = 0.01;
  const ContrastSet cs = derive_contrasts(mat, exc, pl);
  CHECK(cs.eps_r == cplx(1.0, 0.0));
  CHECK(cs.mu_r == doctest::Approx(1.0));
  CHECK(std::abs(cs.nu) == doctest::Approx(0.0));
}

TEST_CASE("nu_i for the reference conducting configuration") {
  // sigma* mu0 omega alpha^2 with sigma* = 1e6 S/m, omega = 1e5 rad/s,
  // alpha = 0.01 m: 1e6 * 4pi e-7 * 1e5 * 1e-4 = 4 pi.
  MaterialSpec mat;
  mat.sigma_star = 1e6;
  mat.mu_star = 100.0 * constants::mu0;
  const Excitation exc{1e5};
  ObjectPlacement pl;
  pl.alpha = 0.01;
  const ContrastSet cs = derive_contrasts(mat, exc, pl);
  CHECK(cs.nu_i == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  CHECK(cs.nu_i == doctest::Approx(12.566370614359172).epsilon(1e-10));
  CHECK(cs.mu_r == doctest::Approx(100.0));
}

TEST_CASE("conduction dominates eps_r across the reference frequency band") {
  MaterialSpec mat;
  mat.sigma_star = 1e6;
  mat.mu_star = 100.0 * constants::mu0;
  ObjectPlacement pl;
  pl.alpha = 0.01;
  for (double omega : {10.0, 1e3, 1e6, 1e9}) {
    const ContrastSet cs = derive_contrasts(mat, Excitation{omega}, pl);
    CHECK(std::abs(cs.eps_r.imag()) > 100.0 * std::abs(cs.eps_r.real()));
  }
}

TEST_CASE("derive_contrasts validates inputs") {
  MaterialSpec mat;
  ObjectPlacement pl;
  CHECK_THROWS_AS(derive_contrasts(mat, Excitation{0.0}, pl), std::domain_error);
  pl.alpha = -1.0;
  CHECK_THROWS_AS(derive_contrasts(mat, Excitation{1.0}, pl), std::domain_error);
  MaterialSpec bad;
  bad.sigma_star = -1.0;
  pl.alpha = 1.0;
  CHECK_THROWS_AS(derive_contrasts(bad, Excitation{1.0}, pl), std::domain_error);
}

TEST_CASE("nu from the complex definition matches the split real formulas") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    MaterialSpec mat;
    mat.eps_star = constants::eps0 * std::pow(10.0, 2.0 * u(rng));
    mat.mu_star = constants::mu0 * std::pow(10.0, 2.0 * u(rng));
    mat.sigma_star = std::pow(10.0, 8.0 * u(rng) - 2.0);
    const Excitation exc{std::pow(10.0, 1.0 + 8.0 * u(rng))};
    ObjectPlacement pl;
    pl.alpha = std::pow(10.0, -3.0 + 2.0 * u(rng));
    const ContrastSet cs = derive_contrasts(mat, exc, pl);
    const cplx split(cs.nu_r, cs.nu_i);
    CHECK(std::abs(cs.nu - split) <= 1e-12 * std::abs(cs.nu));
  }
}

TEST_CASE("Im(eps_r) strictly increases with sigma_star") {
  const Excitation exc{1e4};
  ObjectPlacement pl;
  pl.alpha = 0.1;
  double last = -1.0;
  for (double sigma : {0.0, 1.0, 1e2, 1e4, 1e6}) {
    MaterialSpec mat;
    mat.sigma_star = sigma;
    const ContrastSet cs = derive_contrasts(mat, exc, pl);
    CHECK(cs.eps_r.imag() > last);
    last = cs.eps_r.imag();
  }
}

TEST_CASE("regime classification on the reference configuration") {
  MaterialSpec mat;
  mat.sigma_star = 1e6;
  mat.mu_star = 100.0 * constants::mu0;
  ObjectPlacement pl;
  pl.alpha = 0.01;

  SUBCASE("conducting sphere at 1e5 rad/s is eddy-current") {
    const Excitation exc{1e5};
    const ContrastSet cs = derive_contrasts(mat, exc, pl);
    // alpha/lambda ~ 5e-9 and eps0 omega / sigma ~ 9e-13: deep inside both.
    CHECK(pl.alpha / exc.wavelength() < 1e-8);
    CHECK(mat.eps_star * exc.omega / mat.sigma_star < 1e-12);
    CHECK(classify_regime(cs, exc, pl, mat) == Regime::EddyCurrent);
  }

  SUBCASE("insulating object is quasi-static at low frequency") {
    MaterialSpec ins;
    ins.sigma_star = 0.0;
    const Excitation exc{1e5};
    const ContrastSet cs = derive_contrasts(ins, exc, pl);
    CHECK(classify_regime(cs, exc, pl, ins) == Regime::QuasiStatic);
  }

  SUBCASE("object of wavelength size is the full model") {
    const Excitation exc{1e5};
    ObjectPlacement big;
    big.alpha = exc.wavelength();
    const ContrastSet cs = derive_contrasts(mat, exc, big);
    CHECK(classify_regime(cs, exc, big, mat) == Regime::FullModel);
  }
}

TEST_CASE("classification is invariant under the scaling that fixes both products") {
  // omega -> omega/c, alpha -> alpha sqrt(c) keeps omega alpha^2 and
  // eps omega/sigma ... the first product; keep eps* fixed and check the
  // eddy outcome is stable while both conditions keep holding.
  MaterialSpec mat;
  mat.sigma_star = 1e6;
  mat.mu_star = 100.0 * constants::mu0;
  for (double c : {1.0, 4.0, 25.0, 100.0}) {
    const Excitation exc{1e5 / c};
    ObjectPlacement pl;
    pl.alpha = 0.01 * std::sqrt(c);
    const ContrastSet cs = derive_contrasts(mat, exc, pl);
    CHECK(classify_regime(cs, exc, pl, mat) == Regime::EddyCurrent);
    CHECK(cs.nu_i == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  }
}

TEST_CASE("rank-2 tensor helpers") {
  Rank2TensorC t = Rank2TensorC::Identity(cplx(2.0, -1.0));
  CHECK(t.is_symmetric(1e-14));
  CHECK(t.is_isotropic(1e-14));
  t(0, 1) = cplx(0.5, 0.0);
  CHECK_FALSE(t.is_symmetric(1e-3));
  CHECK(t.symmetry_defect() > 0.1);
  CHECK(t.all_finite());
}

TEST_CASE("levi-civita") {
  CHECK(eps3(0, 1, 2) == 1);
  CHECK(eps3(2, 1, 0) == -1);
  CHECK(eps3(1, 1, 2) == 0);
  int nonzero = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) nonzero += eps3(i, j, k) != 0;
  CHECK(nonzero == 6);
}
