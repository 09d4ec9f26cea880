#include "mpt/sweep.hpp"

#include <cstdio>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>

#include "mpt/oracles.hpp"

namespace mpt {

namespace {

std::string f17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RunConfig::Model resolve_model(const RunConfig& cfg, const ContrastSet& cs,
                               const Excitation& exc) {
  if (cfg.model != RunConfig::Model::Auto) return cfg.model;
  const Regime r = classify_regime(cs, exc, cfg.placement, cfg.material, cfg.thresholds);
  return r == Regime::EddyCurrent ? RunConfig::Model::Eddy : RunConfig::Model::Full;
}

const char* model_name(RunConfig::Model m) {
  switch (m) {
    case RunConfig::Model::Auto: return "auto";
    case RunConfig::Model::Full: return "full";
    case RunConfig::Model::Eddy: return "eddy";
    case RunConfig::Model::Static: return "static";
  }
  return "?";
}

}  // namespace

FrequencyResult run_frequency(const RunConfig& cfg, double omega,
                              std::shared_ptr<const Mesh> mesh) {
  const Excitation exc{omega};
  const ContrastSet cs = derive_contrasts(cfg.material, exc, cfg.placement);
  const RunConfig::Model model = resolve_model(cfg, cs, exc);
  const bool conducting = cfg.material.sigma_star > 0.0;

  FrequencyResult out;
  out.row.omega = omega;
  out.row.regime = model_name(model);

  if (cfg.mode == RunConfig::Mode::Analytic) {
    if (cfg.shape_name != "sphere")
      throw std::invalid_argument("analytic solver path supports only the sphere");
    if (model == RunConfig::Model::Static)
      throw std::invalid_argument("analytic path: use full or eddy at omega > 0");
    out.bundle = oracle_bundle_sphere(
        cfg.material, exc, cfg.placement,
        model == RunConfig::Model::Eddy ? SphereModel::Eddy : SphereModel::Full);
  } else {
    if (!mesh) throw std::invalid_argument("run_frequency: fem mode needs a mesh");
    std::array<DiscreteVectorField, 3> theta;
    std::optional<std::array<DiscreteScalarField, 3>> vth;
    switch (model) {
      case RunConfig::Model::Eddy:
        theta = solve_theta_eddy_all(cs.nu_i, cs.mu_r, mesh, cfg.solver);
        break;
      case RunConfig::Model::Static:
        theta = solve_theta_static_all(cs.mu_r, mesh, cfg.solver);
        break;
      default:
        theta = solve_theta_full_all(cs, mesh, cfg.solver);
        vth = solve_vartheta_all(cs.eps_r, mesh, cfg.solver);
        break;
    }
    out.bundle =
        assemble_bundle(theta, vth ? &*vth : nullptr, cs, omega, cfg.placement.alpha,
                        conducting);
  }

  // CSV row from the bundle.
  out.row.M = out.bundle.M.mat();
  for (int j = 0; j < 3; ++j) out.row.B_diag[j] = out.bundle.B(j, j);
  out.row.normA = out.bundle.A.norm();
  out.row.normRmsi = out.bundle.R_msi_norm;
  out.row.residual = out.bundle.provenance.max_residual;
  out.row.iterations = out.bundle.provenance.iterations;
  if (cfg.shape_name == "sphere") {
    out.row.has_oracle = true;
    if (model == RunConfig::Model::Eddy) {
      out.row.oracle_m = sphere_mpt_eddy(cs.mu_r, cs.nu_i, cfg.placement.alpha);
    } else {
      SphereSeriesParams p;
      p.mu_r = cs.mu_r;
      p.eps_r = cs.eps_r;
      p.k_alpha = cs.k_alpha;
      out.row.oracle_m = sphere_mpt_full(p, cfg.placement.alpha);
    }
  }
  return out;
}

SweepOutcome run_sweep(const RunConfig& cfg, int workers) {
  std::shared_ptr<const Mesh> mesh;
  if (cfg.mode == RunConfig::Mode::Fem)
    mesh = std::make_shared<const Mesh>(cfg.make_mesh());

  const int n = int(cfg.omegas.size());
  SweepOutcome out;
  out.rows.resize(size_t(n));

  auto work = [&](int j) {
    const double omega = cfg.omegas[size_t(j)];
    try {
      out.rows[size_t(j)] = run_frequency(cfg, omega, mesh).row;
    } catch (const std::exception& e) {
      SweepRow row;
      row.omega = omega;
      row.regime = "failed";
      row.failed = true;
      row.error = e.what();
      out.rows[size_t(j)] = row;
    }
  };

  if (workers <= 1) {
    for (int j = 0; j < n; ++j) work(j);
  } else {
    std::vector<std::future<void>> futs;
    int next = 0;
    while (next < n) {
      const int batch = std::min(workers, n - next);
      futs.clear();
      for (int b = 0; b < batch; ++b)
        futs.push_back(std::async(std::launch::async, work, next + b));
      for (auto& f : futs) f.get();
      next += batch;
    }
  }
  for (const auto& r : out.rows) out.any_failed = out.any_failed || r.failed;
  return out;
}

const char* sweep_csv_header() {
  return "omega,regime,ReM11,ImM11,ReM12,ImM12,ReM13,ImM13,ReM21,ImM21,ReM22,ImM22,"
         "ReM23,ImM23,ReM31,ImM31,ReM32,ImM32,ReM33,ImM33,ReB11,ImB11,ReB22,ImB22,"
         "ReB33,ImB33,normA,normRmsi,oracle_Rem,oracle_Imm,residual,iterations";
}

void write_sweep_csv(std::ostream& os, const SweepOutcome& outcome) {
  os << sweep_csv_header() << "\n";
  for (const auto& r : outcome.rows) {
    os << f17(r.omega) << "," << r.regime;
    if (r.failed) {
      for (int j = 0; j < 28; ++j) os << ",nan";
      os << "\n";
      continue;
    }
    for (int row = 0; row < 3; ++row)
      for (int col = 0; col < 3; ++col)
        os << "," << f17(r.M(row, col).real()) << "," << f17(r.M(row, col).imag());
    for (int j = 0; j < 3; ++j)
      os << "," << f17(r.B_diag[j].real()) << "," << f17(r.B_diag[j].imag());
    os << "," << f17(r.normA) << "," << f17(r.normRmsi);
    if (r.has_oracle)
      os << "," << f17(r.oracle_m.real()) << "," << f17(r.oracle_m.imag());
    else
      os << ",nan,nan";
    os << "," << f17(r.residual) << "," << r.iterations << "\n";
  }
}

PlotSeries extract_series(std::istream& csv, const std::string& column) {
  std::string line;
  if (!std::getline(csv, line)) throw std::runtime_error("plotdata: empty CSV");
  std::vector<std::string> cols;
  {
    std::istringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  int target = -1, omega_col = -1;
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] == column) target = int(j);
    if (cols[j] == "omega") omega_col = int(j);
  }
  if (omega_col < 0) throw std::runtime_error("plotdata: CSV has no omega column");
  if (target < 0)
    throw std::runtime_error("plotdata: CSV has no column named '" + column + "'");

  PlotSeries s;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    int j = 0;
    double w = 0.0, v = 0.0;
    bool have_w = false, have_v = false;
    while (std::getline(ss, cell, ',')) {
      if (j == omega_col) {
        w = std::stod(cell);
        have_w = true;
      }
      if (j == target) {
        try {
          v = std::stod(cell);
        } catch (const std::exception&) {
          v = std::nan("");
        }
        have_v = true;
      }
      ++j;
    }
    if (!have_w || !have_v) throw std::runtime_error("plotdata: short CSV row");
    s.omega.push_back(w);
    s.value.push_back(v);
  }
  if (s.omega.empty()) throw std::runtime_error("plotdata: CSV has no data rows");
  return s;
}

}  // namespace mpt
