#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "mpt/mesh.hpp"

namespace mpt {

namespace {
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << "mesh v1\n";
  os << "shape " << mesh.shape_desc << "\n";
  os << "truncation_radius " << fmt17(mesh.truncation_radius) << "\n";
  os << "resolution " << fmt17(mesh.resolution) << "\n";
  os << "vertices " << mesh.vertices.size() << "\n";
  for (const auto& v : mesh.vertices)
    os << fmt17(v[0]) << " " << fmt17(v[1]) << " " << fmt17(v[2]) << "\n";
  os << "cells " << mesh.tets.size() << "\n";
  for (size_t t = 0; t < mesh.tets.size(); ++t) {
    const auto& c = mesh.tets[t];
    os << c[0] << " " << c[1] << " " << c[2] << " " << c[3] << " " << mesh.region[t]
       << "\n";
  }
  os << "interface_faces " << mesh.interface_faces.size() << "\n";
  for (const auto& f : mesh.interface_faces)
    os << f.v[0] << " " << f.v[1] << " " << f.v[2] << "\n";
  os << "outer_faces " << mesh.outer_faces.size() << "\n";
  for (const auto& f : mesh.outer_faces) os << f.v[0] << " " << f.v[1] << " " << f.v[2] << "\n";
}

Mesh read_mesh(std::istream& is) {
  std::string line;
  auto next_line = [&]() {
    if (!std::getline(is, line)) throw std::runtime_error("read_mesh: truncated file");
    return line;
  };
  if (next_line() != "mesh v1") throw std::runtime_error("read_mesh: bad header");

  Mesh mesh;
  {
    next_line();
    if (line.rfind("shape ", 0) != 0) throw std::runtime_error("read_mesh: missing shape");
    mesh.shape_desc = line.substr(6);
  }
  std::string kw;
  {
    std::istringstream ss(next_line());
    ss >> kw >> mesh.truncation_radius;
    if (kw != "truncation_radius") throw std::runtime_error("read_mesh: missing truncation_radius");
  }
  {
    std::istringstream ss(next_line());
    ss >> kw >> mesh.resolution;
    if (kw != "resolution") throw std::runtime_error("read_mesh: missing resolution");
  }

  size_t nv = 0;
  {
    std::istringstream ss(next_line());
    ss >> kw >> nv;
    if (kw != "vertices") throw std::runtime_error("read_mesh: missing vertices");
  }
  mesh.vertices.resize(nv);
  for (size_t i = 0; i < nv; ++i) {
    std::istringstream ss(next_line());
    if (!(ss >> mesh.vertices[i][0] >> mesh.vertices[i][1] >> mesh.vertices[i][2]))
      throw std::runtime_error("read_mesh: bad vertex line");
  }

  size_t nt = 0;
  {
    std::istringstream ss(next_line());
    ss >> kw >> nt;
    if (kw != "cells") throw std::runtime_error("read_mesh: missing cells");
  }
  mesh.tets.resize(nt);
  mesh.region.resize(nt);
  for (size_t t = 0; t < nt; ++t) {
    std::istringstream ss(next_line());
    auto& c = mesh.tets[t];
    if (!(ss >> c[0] >> c[1] >> c[2] >> c[3] >> mesh.region[t]))
      throw std::runtime_error("read_mesh: bad cell line");
  }

  auto read_face_block = [&](const char* name, size_t& count) {
    std::istringstream ss(next_line());
    ss >> kw >> count;
    if (kw != name) throw std::runtime_error(std::string("read_mesh: missing ") + name);
  };
  size_t nif = 0, nof = 0;
  std::vector<std::array<int, 3>> iface(0), oface(0);
  read_face_block("interface_faces", nif);
  iface.resize(nif);
  for (auto& f : iface) {
    std::istringstream ss(next_line());
    if (!(ss >> f[0] >> f[1] >> f[2])) throw std::runtime_error("read_mesh: bad face line");
  }
  read_face_block("outer_faces", nof);
  oface.resize(nof);
  for (auto& f : oface) {
    std::istringstream ss(next_line());
    if (!(ss >> f[0] >> f[1] >> f[2])) throw std::runtime_error("read_mesh: bad face line");
  }

  // Rebuild derived topology from the cells and cross-check the face lists.
  detail::build_topology(mesh);
  if (mesh.interface_faces.size() != nif || mesh.outer_faces.size() != nof)
    throw std::runtime_error("read_mesh: face lists inconsistent with cells");
  return mesh;
}

}  // namespace mpt
