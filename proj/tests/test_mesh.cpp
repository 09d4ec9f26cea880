#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "mpt/mesh.hpp"

using namespace mpt;

TEST_CASE("sphere mesh interior volume approximates 4 pi / 3") {
  const Mesh m = generate_mesh(UnitShape::sphere(), 5.0, 0.25);
  const double vol = m.region_volume(0);
  CHECK(std::abs(vol - 4.0 * M_PI / 3.0) <= 0.02 * 4.0 * M_PI / 3.0);
  CHECK(m.region_cell_count(0) >= 100);
}

TEST_CASE("cube mesh interior volume is exact") {
  const Mesh m = generate_mesh(UnitShape::cube(1.0), 5.0, 0.3);
  CHECK(std::abs(m.region_volume(0) - 1.0) <= 1e-9);
}

TEST_CASE("ellipsoid mesh interior volume scales with the axes") {
  const Vec3 ax(1.0, 0.5, 0.5);
  const Mesh ms = generate_mesh(UnitShape::sphere(), 5.0, 0.3);
  const Mesh me = generate_mesh(UnitShape::ellipsoid(ax), 5.0, 0.3);
  const double ratio = me.region_volume(0) / ms.region_volume(0);
  CHECK(ratio == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("truncation radius precondition") {
  CHECK_THROWS_AS(generate_mesh(UnitShape::sphere(), 2.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(generate_mesh(UnitShape::sphere(), 5.0, -1.0), std::invalid_argument);
}

TEST_CASE("too-coarse mesh raises a quality error") {
  CHECK_THROWS_AS(generate_mesh(UnitShape::sphere(), 5.0, 2.0), std::runtime_error);
}

TEST_CASE("interface topology and tags") {
  const Mesh m = generate_mesh(UnitShape::sphere(), 4.0, 0.35);
  CHECK(m.region_cell_count(0) + m.region_cell_count(1) == int(m.tets.size()));
  CHECK(!m.interface_faces.empty());
  CHECK(!m.outer_faces.empty());
  for (const auto& f : m.interface_faces) {
    CHECK(m.region[f.tet_in] == 0);
    CHECK(m.region[f.tet_out] == 1);
    // normal points from B outward
    Vec3 centroid = (m.vertices[f.v[0]] + m.vertices[f.v[1]] + m.vertices[f.v[2]]) / 3.0;
    CHECK(f.normal.dot(centroid) > 0.0);
  }
  // every interface vertex sits on the unit sphere
  for (const auto& f : m.interface_faces)
    for (int v : f.v) CHECK(m.vertices[v].norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("divergence theorem: area-weighted interface normals sum to zero") {
  for (const auto* shape_name : {"sphere", "cube"}) {
    const UnitShape shape = std::string(shape_name) == "sphere" ? UnitShape::sphere()
                                                                : UnitShape::cube(1.0);
    const Mesh m = generate_mesh(shape, 4.0, 0.3);
    Vec3 sum = Vec3::Zero();
    double total = 0.0;
    for (const auto& f : m.interface_faces) {
      sum += f.area * f.normal;
      total += f.area;
    }
    CHECK(sum.norm() <= 1e-10 * total);
  }
}

TEST_CASE("default meshes keep dihedral angles above 10 degrees") {
  for (double res : {0.5, 0.3}) {
    const Mesh m = generate_mesh(UnitShape::sphere(), 5.0, res);
    const MeshQualityReport q = mesh_quality(m);
    CHECK(q.min_dihedral_deg > 10.0);
    CHECK(q.max_aspect < 50.0);
  }
  const Mesh mc = generate_mesh(UnitShape::cube(1.0), 5.0, 0.3);
  CHECK(mesh_quality(mc).min_dihedral_deg > 10.0);
}

TEST_CASE("refinement grows the interior cell count by 6..10x") {
  const Mesh coarse = generate_mesh(UnitShape::sphere(), 5.0, 0.5);
  const Mesh fine = generate_mesh(UnitShape::sphere(), 5.0, 0.25);
  const double factor =
      double(fine.region_cell_count(0)) / double(coarse.region_cell_count(0));
  CHECK(factor >= 6.0);
  CHECK(factor <= 10.0);
}

TEST_CASE("mesh_quality rejects an empty mesh") {
  Mesh empty;
  CHECK_THROWS_AS(mesh_quality(empty), std::invalid_argument);
}

TEST_CASE("boundary-layer profile produces thin interface layers") {
  const RadialProfile p = boundary_layer_profile(0.3, 5.0, 0.01);
  p.validate();
  // the last interior layer before the interface is ~min_layer thick
  const size_t n = p.interior.size();
  REQUIRE(n >= 2);
  CHECK(1.0 - p.interior[n - 2] <= 0.011);
  const Mesh m = generate_mesh(UnitShape::sphere(), 5.0, 0.35, p, 0.0);
  CHECK(m.region_cell_count(0) > 100);
}

TEST_CASE("mesh text round-trip is bit-exact") {
  const Mesh m = generate_mesh(UnitShape::sphere(), 4.0, 0.4);
  std::ostringstream os;
  write_mesh(os, m);
  std::istringstream is(os.str());
  const Mesh back = read_mesh(is);
  REQUIRE(back.vertices.size() == m.vertices.size());
  for (size_t v = 0; v < m.vertices.size(); ++v)
    for (int j = 0; j < 3; ++j) CHECK(back.vertices[v][j] == m.vertices[v][j]);
  REQUIRE(back.tets.size() == m.tets.size());
  CHECK(back.region == m.region);
  std::ostringstream os2;
  write_mesh(os2, back);
  CHECK(os.str() == os2.str());
}

TEST_CASE("generation is deterministic") {
  const Mesh a = generate_mesh(UnitShape::sphere(), 5.0, 0.4);
  const Mesh b = generate_mesh(UnitShape::sphere(), 5.0, 0.4);
  std::ostringstream oa, ob;
  write_mesh(oa, a);
  write_mesh(ob, b);
  CHECK(oa.str() == ob.str());
}
