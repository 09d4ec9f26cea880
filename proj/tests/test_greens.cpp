#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mpt/greens.hpp"

using namespace mpt;

TEST_CASE("Laplace kernel at unit distance") {
  const Vec3 x(1.0, 0.0, 0.0), z(0.0, 0.0, 0.0);
  const GreensDerivatives g = greens_eval(x, z, 0.0);
  CHECK(g.value.real() == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
  CHECK(g.value.imag() == 0.0);
  CHECK(g.grad[0].real() == doctest::Approx(-1.0 / (4.0 * M_PI)).epsilon(1e-14));
  CHECK(std::abs(g.grad[1]) == 0.0);
}

TEST_CASE("static dipole kernel along e1") {
  const Vec3 x(1.0, 0.0, 0.0), z(0.0, 0.0, 0.0);
  const GreensDerivatives g = greens_eval(x, z, 0.0);
  const Mat3 expected = (3.0 * Vec3::UnitX() * Vec3::UnitX().transpose() - Mat3::Identity()) /
                        (4.0 * M_PI);
  CHECK((g.hess.real() - expected).norm() < 1e-14);
  CHECK(g.hess.imag().norm() == 0.0);
}

TEST_CASE("Helmholtz identity trace(hess) = -k^2 value, randomized") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 x(u(rng), u(rng), u(rng));
    const Vec3 z = x + Vec3(1.5 + u(rng), u(rng), u(rng)).normalized() * (0.2 + std::abs(u(rng)));
    const double k = std::pow(10.0, 2.0 * u(rng));
    const GreensDerivatives g = greens_eval(x, z, k);
    const cplx lhs = g.hess.trace();
    const cplx rhs = -k * k * g.value;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs)));
  }
}

TEST_CASE("hessian is exactly symmetric by construction") {
  const GreensDerivatives g = greens_eval(Vec3(0.3, -0.2, 0.9), Vec3(-1.0, 0.4, 0.0), 2.7);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g.hess(i, j) == g.hess(j, i));
}

TEST_CASE("continuity in k near zero") {
  const Vec3 x(0.4, 0.8, -0.3), z(-0.2, 0.0, 0.5);
  const GreensDerivatives g0 = greens_eval(x, z, 0.0);
  const GreensDerivatives gk = greens_eval(x, z, 1e-12);
  CHECK(std::abs(gk.value - g0.value) <= 1e-9 * std::abs(g0.value));
  CHECK((gk.grad - g0.grad).norm() <= 1e-9 * g0.grad.norm());
  CHECK((gk.hess - g0.hess).norm() <= 1e-9 * g0.hess.norm());
}

TEST_CASE("singularity guard") {
  const Vec3 x(0.1, 0.2, 0.3);
  CHECK_THROWS_AS(greens_eval(x, x, 1.0), std::domain_error);
  CHECK_THROWS_AS(greens_eval(x, x + Vec3(1e-14, 0, 0), 1.0), std::domain_error);
}

TEST_CASE("finite-difference agreement of grad and hess") {
  SUBCASE("oscillatory, r = 2") {
    const Vec3 x(2.0, 0.0, 0.0), z(0.0, 0.0, 0.0);
    CHECK(greens_check_fd(x, z, 1.0, 1e-5) <= 1e-6);
  }
  SUBCASE("static, r = 1") {
    const Vec3 x(0.0, 1.0, 0.0), z(0.0, 0.0, 0.0);
    CHECK(greens_check_fd(x, z, 0.0, 1e-5) <= 1e-6);
  }
  SUBCASE("oblique pair") {
    const Vec3 x(0.3, -0.4, 1.2), z(-0.5, 0.3, 0.1);
    CHECK(greens_check_fd(x, z, 3.0, 1e-5) <= 1e-6);
  }
}

TEST_CASE("fd step validation") {
  const Vec3 x(1.0, 0.0, 0.0), z(0.0, 0.0, 0.0);
  CHECK_THROWS_AS(greens_check_fd(x, z, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(greens_check_fd(x, z, 1.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(greens_check_fd(x, z, 1.0, 0.0), std::invalid_argument);
}
