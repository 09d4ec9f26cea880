#include "mpt/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>

namespace mpt {

namespace {

struct SurfaceMesh {
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;
};

// Icosahedron subdivided at frequency f, vertices on the unit sphere.
SurfaceMesh icosphere(int f) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> base = {
      {-1, p, 0}, {1, p, 0},   {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
      {0, -1, -p}, {0, 1, -p}, {p, 0, -1},  {p, 0, 1},  {-p, 0, -1}, {-p, 0, 1}};
  for (auto& v : base) v.normalize();
  const std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  SurfaceMesh out;
  std::map<std::array<int, 3>, int> edge_pts;  // (u, v, step from u), u < v
  std::vector<int> corner_id(base.size(), -1);

  auto corner = [&](int c) {
    if (corner_id[c] < 0) {
      corner_id[c] = int(out.verts.size());
      out.verts.push_back(base[c]);
    }
    return corner_id[c];
  };
  auto edge_point = [&](int u, int v, int t) {
    std::array<int, 3> key = (u < v) ? std::array<int, 3>{u, v, t}
                                     : std::array<int, 3>{v, u, f - t};
    auto it = edge_pts.find(key);
    if (it != edge_pts.end()) return it->second;
    const Vec3 pos =
        ((double(f - t) * base[u] + double(t) * base[v]) / double(f)).normalized();
    const int id = int(out.verts.size());
    out.verts.push_back(pos);
    edge_pts[key] = id;
    return id;
  };

  for (const auto& fc : faces) {
    const int v0 = fc[0], v1 = fc[1], v2 = fc[2];
    // Lattice ids for this face: (i, j) with i + j <= f, i along v0->v1.
    std::vector<int> grid((f + 1) * (f + 1), -1);
    auto at = [&](int i, int j) -> int& { return grid[i * (f + 1) + j]; };
    for (int i = 0; i <= f; ++i) {
      for (int j = 0; j <= f - i; ++j) {
        const int kk = f - i - j;
        int id;
        if (i == f)
          id = corner(v1);
        else if (j == f)
          id = corner(v2);
        else if (kk == f)
          id = corner(v0);
        else if (kk == 0)
          id = edge_point(v1, v2, j);  // along v1->v2, step j
        else if (j == 0)
          id = edge_point(v0, v1, i);
        else if (i == 0)
          id = edge_point(v0, v2, j);
        else {
          id = int(out.verts.size());
          out.verts.push_back(
              ((double(kk) * base[v0] + double(i) * base[v1] + double(j) * base[v2]) /
               double(f))
                  .normalized());
        }
        at(i, j) = id;
      }
    }
    for (int i = 0; i < f; ++i) {
      for (int j = 0; j < f - i; ++j) {
        out.tris.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
        if (j < f - i - 1)
          out.tris.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      }
    }
  }
  // Outward orientation.
  for (auto& t : out.tris) {
    const Vec3 a = out.verts[t[0]], b = out.verts[t[1]], c = out.verts[t[2]];
    if ((b - a).cross(c - a).dot(a + b + c) < 0.0) std::swap(t[1], t[2]);
  }
  return out;
}

// Cube of the given side, n x n quads per face, split into triangles.
SurfaceMesh cube_surface(double side, int n) {
  SurfaceMesh out;
  std::map<std::array<int, 3>, int> ids;  // integer lattice keys
  auto vertex = [&](int ix, int iy, int iz) {
    const std::array<int, 3> key = {ix, iy, iz};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const int id = int(out.verts.size());
    out.verts.push_back(Vec3(-side / 2 + ix * side / n, -side / 2 + iy * side / n,
                             -side / 2 + iz * side / n));
    ids[key] = id;
    return id;
  };
  // axis = fixed coordinate, dir = 0 (low face) or n (high face).
  for (int axis = 0; axis < 3; ++axis) {
    for (int dir : {0, n}) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          auto ijk = [&](int a, int b) {
            std::array<int, 3> c{};
            c[axis] = dir;
            c[(axis + 1) % 3] = a;
            c[(axis + 2) % 3] = b;
            return vertex(c[0], c[1], c[2]);
          };
          int q00 = ijk(i, j), q10 = ijk(i + 1, j), q11 = ijk(i + 1, j + 1),
              q01 = ijk(i, j + 1);
          if (dir == 0) std::swap(q10, q01);  // keep outward orientation
          out.tris.push_back({q00, q10, q11});
          out.tris.push_back({q00, q11, q01});
        }
      }
    }
  }
  for (auto& t : out.tris) {
    const Vec3 a = out.verts[t[0]], b = out.verts[t[1]], c = out.verts[t[2]];
    if ((b - a).cross(c - a).dot((a + b + c) / 3.0) < 0.0) std::swap(t[1], t[2]);
  }
  return out;
}

SurfaceMesh shape_surface(const UnitShape& shape, double resolution) {
  switch (shape.kind()) {
    case UnitShape::Kind::Sphere:
      return icosphere(std::max(2, int(std::ceil(1.06 / resolution))));
    case UnitShape::Kind::Ellipsoid: {
      SurfaceMesh s = icosphere(std::max(2, int(std::ceil(1.06 / resolution))));
      for (auto& v : s.verts) v = v.cwiseProduct(shape.semi_axes());
      return s;
    }
    case UnitShape::Kind::Cube:
      return cube_surface(shape.side(),
                          std::max(2, int(std::ceil(shape.side() / resolution))));
  }
  throw std::logic_error("unknown shape");
}

double tet_signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}

}  // namespace

void RadialProfile::validate() const {
  auto check = [](const std::vector<double>& v, const char* what) {
    if (v.empty()) throw std::invalid_argument(std::string("RadialProfile: empty ") + what);
    double prev = 0.0;
    for (double x : v) {
      if (!(x > prev && x <= 1.0 + 1e-15))
        throw std::invalid_argument(std::string("RadialProfile: ") + what +
                                    " must be increasing in (0, 1]");
      prev = x;
    }
    if (std::abs(v.back() - 1.0) > 1e-14)
      throw std::invalid_argument(std::string("RadialProfile: ") + what + " must end at 1");
  };
  check(interior, "interior scales");
  check(exterior, "exterior fractions");
}

RadialProfile default_radial_profile(double resolution, double truncation_radius) {
  RadialProfile p;
  const int m_in = std::max(2, int(std::lround(1.0 / resolution)));
  for (int j = 1; j <= m_in; ++j) p.interior.push_back(double(j) / m_in);

  const double rho = 1.4;
  double r = 1.0, step = std::max(resolution, 1e-3);
  std::vector<double> radii;
  while (r + step < truncation_radius - 0.25 * step) {
    r += step;
    radii.push_back(r);
    step *= rho;
  }
  radii.push_back(truncation_radius);
  for (double rr : radii) p.exterior.push_back((rr - 1.0) / (truncation_radius - 1.0));
  p.exterior.back() = 1.0;
  return p;
}

RadialProfile boundary_layer_profile(double resolution, double truncation_radius,
                                     double min_layer) {
  if (!(min_layer > 0.0) || min_layer > 0.2)
    throw std::invalid_argument("boundary_layer_profile: min_layer must be in (0, 0.2]");
  RadialProfile p;

  // Interior: geometric layers from the interface inward until the coarse
  // spacing is reached, then uniform toward the centre.
  const double coarse = std::max(resolution, 4.0 * min_layer);
  std::vector<double> depth;  // distance below the interface
  double t = min_layer, cum = 0.0;
  while (cum + t < 0.6 && t < coarse) {
    cum += t;
    depth.push_back(cum);
    t *= 1.7;
  }
  const int rest = std::max(1, int(std::lround((1.0 - cum) / coarse)));
  for (int j = 1; j < rest; ++j) depth.push_back(cum + (1.0 - cum) * double(j) / rest);
  std::vector<double> scales;
  scales.push_back(1.0);
  for (double dpt : depth)
    if (1.0 - dpt > 0.05) scales.push_back(1.0 - dpt);
  std::sort(scales.begin(), scales.end());
  p.interior = scales;

  // Exterior: thin first layer, geometric growth out to the truncation radius.
  double step = std::min(resolution, 30.0 * min_layer);
  double r = 1.0;
  std::vector<double> radii;
  while (r + step < truncation_radius - 0.25 * step) {
    r += step;
    radii.push_back(r);
    step *= 1.6;
  }
  radii.push_back(truncation_radius);
  for (double rr : radii) p.exterior.push_back((rr - 1.0) / (truncation_radius - 1.0));
  p.exterior.back() = 1.0;
  return p;
}

namespace detail {

void build_topology(Mesh& mesh) {
  const int nv = int(mesh.vertices.size());
  // Global edges.
  std::unordered_map<int64_t, int> edge_ids;
  edge_ids.reserve(mesh.tets.size() * 4);
  const int local_pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  mesh.tet_edges.resize(mesh.tets.size());
  for (size_t t = 0; t < mesh.tets.size(); ++t) {
    for (int e = 0; e < 6; ++e) {
      int la = local_pairs[e][0], lb = local_pairs[e][1];
      int ga = mesh.tets[t][la], gb = mesh.tets[t][lb];
      if (ga > gb) {
        std::swap(ga, gb);
        std::swap(la, lb);
      }
      const int64_t key = int64_t(ga) * nv + gb;
      auto it = edge_ids.find(key);
      int id;
      if (it == edge_ids.end()) {
        id = int(mesh.edges.size());
        mesh.edges.push_back({ga, gb});
        edge_ids[key] = id;
      } else {
        id = it->second;
      }
      mesh.tet_edges[t][e] = {id, la, lb};
    }
  }

  // Faces: sorted triple -> adjacent tets.
  std::map<std::array<int, 3>, std::array<int, 2>> faces;
  const int face_opp[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  for (size_t t = 0; t < mesh.tets.size(); ++t) {
    for (int fccc = 0; fccc < 4; ++fccc) {
      std::array<int, 3> tri = {mesh.tets[t][face_opp[fccc][0]],
                                mesh.tets[t][face_opp[fccc][1]],
                                mesh.tets[t][face_opp[fccc][2]]};
      std::sort(tri.begin(), tri.end());
      auto it = faces.find(tri);
      if (it == faces.end())
        faces[tri] = {int(t), -1};
      else
        it->second[1] = int(t);
    }
  }

  auto face_geometry = [&](const std::array<int, 3>& tri, int away_from_tet, Vec3& n,
                           double& area) {
    const Vec3 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]],
               c = mesh.vertices[tri[2]];
    Vec3 cross = (b - a).cross(c - a);
    area = 0.5 * cross.norm();
    n = cross.normalized();
    // opposite vertex of the tet not on the face
    Vec3 centroid = (a + b + c) / 3.0;
    const auto& tet = mesh.tets[away_from_tet];
    Vec3 opp = Vec3::Zero();
    for (int j = 0; j < 4; ++j)
      if (tet[j] != tri[0] && tet[j] != tri[1] && tet[j] != tri[2])
        opp = mesh.vertices[tet[j]];
    if (n.dot(centroid - opp) < 0.0) n = -n;
  };

  for (const auto& [tri, adj] : faces) {
    if (adj[1] < 0) {
      Mesh::OuterFace f;
      f.v = tri;
      f.tet = adj[0];
      face_geometry(tri, adj[0], f.normal, f.area);
      mesh.outer_faces.push_back(f);
    } else if (mesh.region[adj[0]] != mesh.region[adj[1]]) {
      Mesh::InterfaceFace f;
      f.v = tri;
      f.tet_in = mesh.region[adj[0]] == 0 ? adj[0] : adj[1];
      f.tet_out = mesh.region[adj[0]] == 0 ? adj[1] : adj[0];
      face_geometry(tri, f.tet_in, f.normal, f.area);
      mesh.interface_faces.push_back(f);
    }
  }
}

}  // namespace detail

double Mesh::tet_volume(int t) const {
  return tet_signed_volume(vertices[tets[t][0]], vertices[tets[t][1]],
                           vertices[tets[t][2]], vertices[tets[t][3]]);
}

double Mesh::region_volume(int tag) const {
  double v = 0.0;
  for (size_t t = 0; t < tets.size(); ++t)
    if (region[t] == tag) v += tet_volume(int(t));
  return v;
}

int Mesh::region_cell_count(int tag) const {
  int n = 0;
  for (int r : region)
    if (r == tag) ++n;
  return n;
}

Mesh generate_mesh(const UnitShape& shape, double truncation_radius, double resolution) {
  const RadialProfile profile = default_radial_profile(resolution, truncation_radius);
  return generate_mesh(shape, truncation_radius, resolution, profile, 10.0);
}

Mesh generate_mesh(const UnitShape& shape, double truncation_radius, double resolution,
                   const RadialProfile& profile, double dihedral_floor_deg) {
  if (!(truncation_radius >= 3.0))
    throw std::invalid_argument("generate_mesh: truncation_radius must be >= 3");
  if (!(resolution > 0.0))
    throw std::invalid_argument("generate_mesh: resolution must be > 0");
  profile.validate();

  const SurfaceMesh surf = shape_surface(shape, resolution);
  const int ns = int(surf.verts.size());
  const int n_in = int(profile.interior.size());
  const int n_out = int(profile.exterior.size());
  const int n_layers = n_in + n_out;

  Mesh mesh;
  mesh.truncation_radius = truncation_radius;
  mesh.shape_desc = shape.describe();
  mesh.resolution = resolution;
  mesh.vertices.reserve(1 + size_t(ns) * n_layers);
  mesh.vertices.push_back(Vec3::Zero());  // centre

  for (int l = 0; l < n_in; ++l) {
    const double s = profile.interior[l];
    for (const auto& v : surf.verts) mesh.vertices.push_back(s * v);
  }
  for (int l = 0; l < n_out; ++l) {
    const double t = profile.exterior[l];
    for (const auto& v : surf.verts) {
      const Vec3 target = truncation_radius * v.normalized();
      mesh.vertices.push_back(v + t * (target - v));
    }
  }

  auto layer_vertex = [&](int layer, int sv) { return 1 + layer * ns + sv; };

  auto push_tet = [&](int a, int b, int c, int d, int tag) {
    if (tet_signed_volume(mesh.vertices[a], mesh.vertices[b], mesh.vertices[c],
                          mesh.vertices[d]) < 0.0)
      std::swap(c, d);
    mesh.tets.push_back({a, b, c, d});
    mesh.region.push_back(tag);
  };

  // Core: centre to the first interior layer.
  for (const auto& tri : surf.tris)
    push_tet(0, layer_vertex(0, tri[0]), layer_vertex(0, tri[1]), layer_vertex(0, tri[2]),
             0);

  // Prism layers; diagonals follow the sorted-column rule so adjacent prisms
  // agree on shared quad faces.
  for (int l = 0; l + 1 < n_layers; ++l) {
    const int tag = (l + 1 <= n_in - 1) ? 0 : 1;
    for (const auto& tri : surf.tris) {
      std::array<int, 3> col = tri;
      std::sort(col.begin(), col.end());
      const int a0 = layer_vertex(l, col[0]), b0 = layer_vertex(l, col[1]),
                c0 = layer_vertex(l, col[2]);
      const int a1 = layer_vertex(l + 1, col[0]), b1 = layer_vertex(l + 1, col[1]),
                c1 = layer_vertex(l + 1, col[2]);
      push_tet(a0, b0, c0, c1, tag);
      push_tet(a0, b0, c1, b1, tag);
      push_tet(a0, b1, c1, a1, tag);
    }
  }

  detail::build_topology(mesh);

  const int interior_cells = mesh.region_cell_count(0);
  if (interior_cells < 100)
    throw std::runtime_error(
        "generate_mesh: mesh quality error, fewer than 100 interior cells (" +
        std::to_string(interior_cells) + "); refine the resolution");

  if (dihedral_floor_deg > 0.0) {
    const MeshQualityReport q = mesh_quality(mesh);
    if (q.min_dihedral_deg <= dihedral_floor_deg)
      throw std::runtime_error("generate_mesh: mesh quality error, min dihedral angle " +
                               std::to_string(q.min_dihedral_deg) + " deg below floor " +
                               std::to_string(dihedral_floor_deg));
  }
  return mesh;
}

MeshQualityReport mesh_quality(const Mesh& mesh) {
  if (mesh.tets.empty()) throw std::invalid_argument("mesh_quality: empty mesh");
  MeshQualityReport q;
  q.num_vertices = int(mesh.vertices.size());
  q.num_tets = int(mesh.tets.size());
  q.num_edges = mesh.num_edges();
  q.num_interior = mesh.region_cell_count(0);
  q.num_exterior = mesh.region_cell_count(1);
  q.num_interface_faces = int(mesh.interface_faces.size());
  q.num_outer_faces = int(mesh.outer_faces.size());
  q.interior_volume = mesh.region_volume(0);
  q.exterior_volume = mesh.region_volume(1);

  double min_dih = M_PI;
  double max_aspect = 0.0;
  const int face_opp[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  for (size_t t = 0; t < mesh.tets.size(); ++t) {
    const auto& tet = mesh.tets[t];
    Vec3 p[4];
    for (int j = 0; j < 4; ++j) p[j] = mesh.vertices[tet[j]];
    // Outward face normals and areas.
    Vec3 n[4];
    double area_sum = 0.0;
    for (int fI = 0; fI < 4; ++fI) {
      const Vec3 a = p[face_opp[fI][0]], b = p[face_opp[fI][1]], c = p[face_opp[fI][2]];
      Vec3 cr = (b - a).cross(c - a);
      area_sum += 0.5 * cr.norm();
      cr.normalize();
      if (cr.dot((a + b + c) / 3.0 - p[fI]) < 0.0) cr = -cr;
      n[fI] = cr;
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const double cosang = std::clamp(-n[i].dot(n[j]), -1.0, 1.0);
        min_dih = std::min(min_dih, std::acos(cosang));
      }
    double max_edge = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) max_edge = std::max(max_edge, (p[i] - p[j]).norm());
    const double vol = mesh.tet_volume(int(t));
    const double r_in = 3.0 * vol / area_sum;
    max_aspect = std::max(max_aspect, max_edge / (2.0 * std::sqrt(6.0) * r_in));
  }
  q.min_dihedral_deg = min_dih * 180.0 / M_PI;
  q.max_aspect = max_aspect;
  return q;
}

}  // namespace mpt
