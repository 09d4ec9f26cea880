#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpt/assemble.hpp"
#include "mpt/oracles.hpp"
#include "mpt/solve.hpp"

using namespace mpt;

namespace {
std::shared_ptr<const Mesh> sphere_mesh() {
  static auto mesh =
      std::make_shared<const Mesh>(generate_mesh(UnitShape::sphere(), 5.0, 0.28));
  return mesh;
}
}  // namespace

TEST_CASE("eps_r = 1: B vanishes through the (eps_r - 1) prefactor") {
  SolverParams params;
  const auto vth = solve_vartheta_all(cplx(1.0, 0.0), sphere_mesh(), params);
  const Rank2TensorC b = assemble_B(vth, cplx(1.0, 0.0), 1.0);
  CHECK(b.norm() == 0.0);
  // the scalar solutions themselves are nonzero (pure jump datum)
  CHECK(vth[0].coeffs.norm() > 0.0);
}

TEST_CASE("sphere Polya-Szego via the scalar solver") {
  SolverParams params;
  struct Case {
    double eps;
    double expected;  // 4 pi (c-1)/(c+2)
  };
  for (const Case c : {Case{2.0, 4.0 * M_PI / 4.0}, Case{3.0, 4.0 * M_PI * 2.0 / 5.0}}) {
    const auto vth = solve_vartheta_all(cplx(c.eps, 0.0), sphere_mesh(), params);
    const Rank2TensorC b = assemble_B(vth, cplx(c.eps, 0.0), 1.0);
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(b(j, j).real() - c.expected) <= 0.05 * c.expected);
    CHECK(b.is_symmetric(1e-10));
    CHECK(b.is_isotropic(0.05));
  }
}

TEST_CASE("ellipsoid B against the depolarization oracle") {
  const Vec3 ax(1.0, 0.5, 0.5);
  auto mesh = std::make_shared<const Mesh>(generate_mesh(UnitShape::ellipsoid(ax), 5.0, 0.28));
  SolverParams params;
  const cplx eps(4.0, 0.0);
  const auto vth = solve_vartheta_all(eps, mesh, params);
  const Rank2TensorC b = assemble_B(vth, eps, 1.0);
  const Rank2TensorC oracle = polya_szego_ellipsoid(ax, eps, 1.0);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(b(j, j) - oracle(j, j)) <= 0.05 * std::abs(oracle(j, j)));
}

TEST_CASE("B alpha^3 scaling is exact") {
  SolverParams params;
  const cplx eps(2.0, 0.5);
  const auto vth = solve_vartheta_all(eps, sphere_mesh(), params);
  const Rank2TensorC b1 = assemble_B(vth, eps, 1.0);
  const Rank2TensorC b2 = assemble_B(vth, eps, 2.0);
  CHECK(std::abs(b2(0, 0) / b1(0, 0) - 8.0) <= 1e-12);
}

TEST_CASE("complex contrast solves report tight residuals") {
  SolverParams params;
  const cplx eps(5.0, 40.0);
  const auto vth = solve_vartheta_all(eps, sphere_mesh(), params);
  for (const auto& f : vth) CHECK(f.diag.residual <= params.rel_tol);
}

TEST_CASE("axis index validation") {
  SolverParams params;
  CHECK_THROWS_AS(solve_vartheta(0, cplx(2.0, 0.0), sphere_mesh(), params),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_vartheta(4, cplx(2.0, 0.0), sphere_mesh(), params),
                  std::invalid_argument);
}
