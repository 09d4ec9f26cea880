#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "mpt/assemble.hpp"
#include "mpt/oracles.hpp"

using namespace mpt;

namespace {

std::shared_ptr<const Mesh> sphere_mesh() {
  static auto mesh =
      std::make_shared<const Mesh>(generate_mesh(UnitShape::sphere(), 5.0, 0.3));
  return mesh;
}

Rank3TensorC planted_skew(const Rank2TensorC& check) {
  Rank3TensorC c;
  for (int m = 0; m < 3; ++m)
    for (int s = 0; s < 3; ++s)
      for (int i = 0; i < 3; ++i) {
        cplx acc = 0.0;
        for (int r = 0; r < 3; ++r)
          if (eps3(m, s, r) != 0) acc += double(eps3(m, s, r)) * check(r, i);
        c(m, s, i) = acc;
      }
  return c;
}

}  // namespace

TEST_CASE("skew decomposition recovers a planted tensor exactly") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Rank2TensorC check;
    for (int r = 0; r < 3; ++r)
      for (int i = 0; i < 3; ++i) check(r, i) = cplx(u(rng), u(rng));
    const Rank3TensorC c = planted_skew(check);
    const auto [rec, rem] = skew_decompose_C(c);
    CHECK((rec - check).norm() <= 1e-14 * check.norm());
    CHECK(rem.norm() <= 1e-14 * c.norm());
  }
}

TEST_CASE("skew decomposition of zero is zero") {
  const auto [check, rem] = skew_decompose_C(Rank3TensorC());
  CHECK(check.norm() == 0.0);
  CHECK(rem.norm() == 0.0);
}

TEST_CASE("eddy sphere bundle: MPT against the series oracle") {
  SolverParams params;
  const double nu_i = 4.0 * M_PI, mu_r = 100.0;
  // boundary-layer profile: |kappa| = sqrt(nu_i mu_r) ~ 35, skin depth ~ 0.04
  const RadialProfile prof = boundary_layer_profile(0.3, 5.0, 0.01);
  auto mesh = std::make_shared<const Mesh>(
      generate_mesh(UnitShape::sphere(), 5.0, 0.3, prof, 0.0));
  const auto th = solve_theta_eddy_all(nu_i, mu_r, mesh, params);

  ContrastSet cs;
  cs.eps_r = cplx(1.0, nu_i / 1e-6);  // physical eps_r of a matching run
  cs.mu_r = mu_r;
  cs.nu = cplx(0.0, nu_i);
  cs.nu_i = nu_i;
  cs.k_alpha = 1e-3;
  const TensorBundle b = assemble_bundle(th, nullptr, cs, 1e5, 1.0, true);

  const cplx oracle = sphere_mpt_eddy(mu_r, nu_i, 1.0);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(b.M(j, j) - oracle) <= 0.05 * std::abs(oracle));
  CHECK(b.M.is_isotropic(0.05));
  CHECK(b.M.symmetry_defect() <= 5e-2);
  // eddy model: A and B vanish identically in the bundle
  CHECK(b.A.norm() == 0.0);
  CHECK(b.B.norm() == 0.0);
  // the Levi-Civita projection agrees with the direct moment integral
  CHECK(b.check_gap <= 1e-12 * std::max(b.C_check.norm(), 1.0));

  SUBCASE("A assembled from the eddy fields is small (integration by parts)") {
    const Rank2TensorC a = assemble_A(th, cs.eps_r, cs.k_alpha, 1.0);
    // reference scale: the prefactor times the moment of |e_i x xi|
    const double ref =
        std::abs(I * cs.k_alpha * (cs.eps_r - 1.0) / 2.0) * th[0].mesh->region_volume(0);
    CHECK(a.norm() <= 1e-3 * ref);
  }

  SUBCASE("symmetric bilinear form agrees with the direct assembly") {
    const SymmetricAssembly sym = assemble_M_symmetric(th, 1.0);
    CHECK(sym.M.symmetry_defect() <= 1e-12);
    const double tol = 2.0 * (b.M - Rank2TensorC::Identity(oracle)).norm() + 1e-10;
    CHECK((sym.M - b.M).norm() <= tol);
  }

  SUBCASE("skew remainder is a small fraction of C") {
    CHECK(b.R_msi_norm <= 0.05 * b.C.norm());
  }
}

TEST_CASE("static fields: M reduces to N and C_check vanishes") {
  SolverParams params;
  const auto th = solve_theta_static_all(2.0, sphere_mesh(), params);
  ContrastSet cs;
  cs.eps_r = 1.0;
  cs.mu_r = 2.0;
  cs.nu = 0.0;
  cs.k_alpha = 0.0;
  const TensorBundle b = assemble_bundle(th, nullptr, cs, 0.0, 1.0, false);
  CHECK(b.C_check.norm() == 0.0);
  CHECK((b.M - b.N).norm() == 0.0);
  CHECK_THROWS_AS(assemble_M_symmetric(th, 1.0), std::invalid_argument);
}

TEST_CASE("N alpha^3 scaling is exact") {
  SolverParams params;
  const auto th = solve_theta_static_all(2.0, sphere_mesh(), params);
  const Rank2TensorC n1 = assemble_N(th, 2.0, 1.0);
  const Rank2TensorC n2 = assemble_N(th, 2.0, 2.0);
  CHECK(std::abs(n2(0, 0) / n1(0, 0) - 8.0) <= 1e-12);
}

TEST_CASE("assembly rejects mismatched meshes") {
  SolverParams params;
  auto mesh_b = std::make_shared<const Mesh>(generate_mesh(UnitShape::sphere(), 5.0, 0.35));
  auto ta = solve_theta_static_all(2.0, sphere_mesh(), params);
  auto tb = solve_theta_static_all(2.0, mesh_b, params);
  std::array<DiscreteVectorField, 3> mixed = {ta[0], tb[1], ta[2]};
  CHECK_THROWS_AS(assemble_N(mixed, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("oracle bundle and serialization round trip") {
  MaterialSpec mat;
  mat.sigma_star = 1e6;
  mat.mu_star = 100.0 * constants::mu0;
  const Excitation exc{1e5};
  ObjectPlacement pl;
  pl.alpha = 0.01;
  const TensorBundle b = oracle_bundle_sphere(mat, exc, pl, SphereModel::Eddy);

  const cplx oracle = sphere_mpt_eddy(100.0, 4.0 * M_PI, 0.01);
  CHECK(std::abs(b.M(0, 0) - oracle) <= 1e-14 * std::abs(oracle));
  CHECK(b.A.norm() == 0.0);
  CHECK(b.R_msi_norm == 0.0);
  CHECK(b.M.symmetry_defect() <= 1e-8);

  std::ostringstream os;
  write_bundle(os, b);
  std::istringstream is(os.str());
  const TensorBundle back = read_bundle(is);
  CHECK((back.M - b.M).norm() == 0.0);
  CHECK((back.B - b.B).norm() == 0.0);
  CHECK(back.provenance.omega == b.provenance.omega);
  std::ostringstream os2;
  write_bundle(os2, back);
  CHECK(os.str() == os2.str());
}

TEST_CASE("full-model oracle bundle carries the Polya-Szego B") {
  MaterialSpec mat;
  mat.eps_star = 3.0 * constants::eps0;
  const Excitation exc{1e6};
  ObjectPlacement pl;
  pl.alpha = 0.01;
  const TensorBundle b = oracle_bundle_sphere(mat, exc, pl, SphereModel::Full);
  const Rank2TensorC expect = polya_szego_sphere(cplx(3.0, 0.0), 0.01);
  CHECK((b.B - expect).norm() <= 1e-12 * expect.norm());
}
