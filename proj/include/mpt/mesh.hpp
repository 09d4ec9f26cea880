#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "mpt/shape.hpp"

namespace mpt {

// Radial layer layout of the layered mesh: interior scale factors in (0, 1]
// ending exactly at 1 (the interface), and exterior blend fractions in (0, 1]
// ending at 1 (the truncation sphere).
struct RadialProfile {
  std::vector<double> interior;
  std::vector<double> exterior;

  void validate() const;
};

// Quasi-uniform layout with layer spacing ~resolution.
RadialProfile default_radial_profile(double resolution, double truncation_radius);

// Layout graded geometrically toward the interface on both sides, for
// skin-depth-limited conducting solves. min_layer is the thickness of the
// layer touching the interface.
RadialProfile boundary_layer_profile(double resolution, double truncation_radius,
                                     double min_layer);

// Conforming tetrahedral mesh of the ball of given truncation radius with the
// unit object B resolved by an interior/exterior interface at its boundary.
// Construction is layered over a closed surface triangulation of B and is
// fully deterministic: identical inputs give identical meshes.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> tets;   // positively oriented
  std::vector<int> region;                // 0 = inside B, 1 = exterior

  // Global edges (a < b) and, per tet, the 6 incident edges with the local
  // vertex pair ordered to match the global orientation.
  std::vector<std::array<int, 2>> edges;
  struct TetEdge {
    int edge;
    int la, lb;  // local vertex indices, global(v[la]) < global(v[lb])
  };
  std::vector<std::array<TetEdge, 6>> tet_edges;

  struct InterfaceFace {
    std::array<int, 3> v;
    int tet_in, tet_out;
    Vec3 normal;  // unit, from B into the exterior
    double area;
  };
  std::vector<InterfaceFace> interface_faces;

  struct OuterFace {
    std::array<int, 3> v;
    int tet;
    Vec3 normal;  // unit, outward
    double area;
  };
  std::vector<OuterFace> outer_faces;

  double truncation_radius = 0.0;
  std::string shape_desc;
  double resolution = 0.0;

  int num_edges() const { return int(edges.size()); }
  double tet_volume(int t) const;
  double region_volume(int tag) const;
  int region_cell_count(int tag) const;
};

struct MeshQualityReport {
  double min_dihedral_deg = 0.0;
  double max_aspect = 0.0;
  int num_vertices = 0;
  int num_tets = 0;
  int num_edges = 0;
  int num_interior = 0;
  int num_exterior = 0;
  int num_interface_faces = 0;
  int num_outer_faces = 0;
  double interior_volume = 0.0;
  double exterior_volume = 0.0;
};

Mesh generate_mesh(const UnitShape& shape, double truncation_radius, double resolution);
// Variant with an explicit radial layout; dihedral_floor_deg below the
// default admits boundary-layer grading.
Mesh generate_mesh(const UnitShape& shape, double truncation_radius, double resolution,
                   const RadialProfile& profile, double dihedral_floor_deg = 0.0);

MeshQualityReport mesh_quality(const Mesh& mesh);

// Plain-text mesh exchange: "mesh v1" header, vertex/cell/face blocks with
// coordinates at 17 significant digits (round-trip is bit-exact).
void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

namespace detail {
// Derives edges, interface faces and outer faces from vertices/tets/regions.
void build_topology(Mesh& mesh);
}  // namespace detail

}  // namespace mpt
