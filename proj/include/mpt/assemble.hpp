#pragma once

#include <iosfwd>
#include <optional>

#include "mpt/core.hpp"
#include "mpt/integrals.hpp"
#include "mpt/tensors.hpp"

namespace mpt {

struct TensorProvenance {
  std::string path;    // "fem" or "oracle"
  std::string model;   // "full", "eddy", "static"
  double omega = 0.0;
  double alpha = 0.0;
  cplx eps_r{1.0, 0.0};
  double mu_r = 1.0;
  cplx nu{0.0, 0.0};
  double k = 0.0;
  bool conducting = false;  // sigma_star > 0
  std::string mesh_desc;
  int n_dofs = 0;
  double max_residual = 0.0;
  int iterations = 0;
};

struct TensorBundle {
  Rank2TensorC A;
  Rank2TensorC B;
  Rank3TensorC C;
  Rank2TensorC C_check;  // Levi-Civita projection of C (canonical)
  Rank3TensorC R;        // non-skew remainder of C
  Rank2TensorC N;
  Rank2TensorC M;        // N - C_check, entrywise
  double R_msi_norm = 0.0;
  double check_gap = 0.0;  // |projected - direct moment| diagnostic
  TensorProvenance provenance;
};

// Individual tensor assemblies from solved unit-domain fields. eps_r and k
// are the physical contrast and wavenumber of the run (for the eddy model
// pass the physical eps_r; the model's nu is read from the fields).
Rank2TensorC assemble_A(const std::array<DiscreteVectorField, 3>& theta, cplx eps_r,
                        double k, double alpha);
Rank2TensorC assemble_B(const std::array<DiscreteScalarField, 3>& vartheta, cplx eps_r,
                        double alpha);
Rank3TensorC assemble_C(const std::array<DiscreteVectorField, 3>& theta, cplx eps_r,
                        double k, double alpha);
Rank2TensorC assemble_N(const std::array<DiscreteVectorField, 3>& theta, double mu_r,
                        double alpha);
Rank2TensorC assemble_M(const Rank2TensorC& N, const Rank2TensorC& C_check);

// C_msi = eps_{msr} Ccheck_{ri} + R_msi with Ccheck the Levi-Civita
// projection (exact algebra; R carries whatever is not skew).
std::pair<Rank2TensorC, Rank3TensorC> skew_decompose_C(const Rank3TensorC& C);

// Direct moment-integral form of Ccheck: -(nu alpha^3 / 4) int_B xi x (theta_i + e_i x xi).
Rank2TensorC assemble_C_check_direct(const std::array<DiscreteVectorField, 3>& theta,
                                     double alpha);

// M via the manifestly symmetric bilinear form (exterior integrals truncated
// at the mesh boundary; the neglected tail is estimated and reported).
struct SymmetricAssembly {
  Rank2TensorC M;
  double truncation_tail = 0.0;
};
SymmetricAssembly assemble_M_symmetric(const std::array<DiscreteVectorField, 3>& theta,
                                       double alpha);

// Full bundle from solved fields; vartheta (for B) is optional — the eddy
// model sets A and B to zero identically.
TensorBundle assemble_bundle(const std::array<DiscreteVectorField, 3>& theta,
                             const std::array<DiscreteScalarField, 3>* vartheta,
                             const ContrastSet& cs, double omega, double alpha,
                             bool conducting);

// Analytic sphere bundle (series path) under the chosen model.
enum class SphereModel { Full, Eddy };
TensorBundle oracle_bundle_sphere(const MaterialSpec& mat, const Excitation& exc,
                                  const ObjectPlacement& placement, SphereModel model,
                                  int order = 30);

// Plain-text serialization with 17-significant-digit entries.
void write_bundle(std::ostream& os, const TensorBundle& b);
TensorBundle read_bundle(std::istream& is);

}  // namespace mpt
