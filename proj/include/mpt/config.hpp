#pragma once

#include <optional>
#include <vector>

#include "mpt/core.hpp"
#include "mpt/mesh.hpp"
#include "mpt/solve.hpp"

namespace mpt {

// Sectioned key-value run configuration (INI-style, strict: unknown sections
// or keys are rejected).
struct RunConfig {
  // [material]
  MaterialSpec material;
  // [object]
  std::string shape_name = "sphere";
  Vec3 semi_axes = Vec3::Ones();
  double cube_side = 1.0;
  ObjectPlacement placement;
  // [sweep]
  std::vector<double> omegas;  // resolved list, ascending
  // [solver]
  enum class Mode { Analytic, Fem } mode = Mode::Analytic;
  double resolution = 0.3;
  double truncation_radius = 5.0;
  SolverParams solver;
  double boundary_layer = 0.0;  // >0: min layer thickness of the graded profile
  enum class Model { Auto, Full, Eddy, Static } model = Model::Auto;
  // [regime]
  RegimeThresholds thresholds;
  // [background]
  std::string background_kind = "uniform";
  Vec3 background_h = Vec3(0, 0, 1);
  Vec3 background_direction = Vec3(0, 0, 1);
  Vec3 background_polarization = Vec3(1, 0, 0);
  double background_amplitude = 1.0;
  // [output]
  std::string csv_path = "sweep.csv";
  std::string bundle_path = "tensors.txt";
  // [points]
  std::vector<Vec3> points;
  // [field]
  double residual_C = 1.0;

  UnitShape make_shape() const;
  Mesh make_mesh() const;  // honors boundary_layer
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace mpt
