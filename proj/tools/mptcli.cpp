#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mpt/fields.hpp"
#include "mpt/oracles.hpp"
#include "mpt/sweep.hpp"

namespace fs = std::filesystem;
using namespace mpt;

namespace {

BackgroundField make_background(const RunConfig& cfg, double k) {
  if (cfg.background_kind == "planewave")
    return BackgroundField::plane_wave(cfg.background_direction, cfg.background_polarization,
                                       cfg.background_amplitude, k);
  return BackgroundField::uniform_h(cfg.background_amplitude * cfg.background_h.cast<cplx>(),
                                    k, cfg.placement.z);
}

int cmd_tensors(const RunConfig& cfg, const std::string& out_dir, int workers, bool verbose) {
  (void)workers;
  RunConfig c = cfg;
  c.solver.verbose = verbose;
  std::shared_ptr<const Mesh> mesh;
  if (c.mode == RunConfig::Mode::Fem) mesh = std::make_shared<const Mesh>(c.make_mesh());
  const double omega = c.omegas.front();
  if (c.omegas.size() > 1)
    std::cerr << "tensors: multiple frequencies configured; using omega = " << omega << "\n";

  const FrequencyResult r = run_frequency(c, omega, mesh);
  const fs::path path = fs::path(out_dir) / c.bundle_path;
  std::ofstream f(path);
  if (!f) {
    std::cerr << "tensors: cannot write " << path << "\n";
    return 1;
  }
  write_bundle(f, r.bundle);
  std::cout << "wrote " << path.string() << "\n";
  std::cout << "model=" << r.row.regime << " |M11|=" << std::abs(r.bundle.M(0, 0))
            << " normA=" << r.row.normA << " normRmsi=" << r.row.normRmsi << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir, int workers, bool verbose) {
  RunConfig c = cfg;
  c.solver.verbose = verbose;
  const SweepOutcome outcome = run_sweep(c, workers);
  const fs::path path = fs::path(out_dir) / c.csv_path;
  std::ofstream f(path);
  if (!f) {
    std::cerr << "sweep: cannot write " << path << "\n";
    return 1;
  }
  write_sweep_csv(f, outcome);
  std::cout << "wrote " << path.string() << " (" << outcome.rows.size() << " rows)\n";
  if (outcome.any_failed) {
    for (const auto& r : outcome.rows)
      if (r.failed) std::cerr << "sweep: omega " << r.omega << " failed: " << r.error << "\n";
    return 1;
  }
  return 0;
}

int cmd_compare_regimes(const RunConfig& cfg, const std::string& out_dir, int workers,
                        bool verbose) {
  (void)workers;
  RunConfig c = cfg;
  c.solver.verbose = verbose;
  std::shared_ptr<const Mesh> mesh;
  if (c.mode == RunConfig::Mode::Fem) mesh = std::make_shared<const Mesh>(c.make_mesh());
  const double omega = c.omegas.front();
  const Excitation exc{omega};
  const ContrastSet cs = derive_contrasts(c.material, exc, c.placement);
  const double k = exc.k();
  const bool conducting = c.material.sigma_star > 0.0;

  const FrequencyResult fr = run_frequency(c, omega, mesh);
  const TensorBundle& bundle = fr.bundle;
  const BackgroundField bg = make_background(c, k);

  std::vector<Vec3> points = c.points;
  if (points.empty()) {
    const double a = c.placement.alpha;
    points = {c.placement.z + Vec3(5 * a, 0, 0), c.placement.z + Vec3(0, 10 * a, 0),
              c.placement.z + Vec3(12 * a, 9 * a, 16 * a)};
  }

  // Closed-form Polya-Szego pair for the reduced regimes (sphere/ellipsoid).
  std::optional<PolyaSzegoPair> ps;
  try {
    PolyaSzegoPair pr;
    if (c.shape_name == "sphere") {
      pr.T_mu = polya_szego_sphere(cplx(cs.mu_r, 0.0), c.placement.alpha);
      pr.T_eps = polya_szego_sphere(cs.eps_r, c.placement.alpha);
    } else if (c.shape_name == "ellipsoid") {
      pr.T_mu = polya_szego_ellipsoid(c.semi_axes, cplx(cs.mu_r, 0.0), c.placement.alpha);
      pr.T_eps = polya_szego_ellipsoid(c.semi_axes, cs.eps_r, c.placement.alpha);
    } else {
      throw std::runtime_error("no closed-form tensor for this shape");
    }
    pr.conducting = conducting;
    ps = pr;
  } catch (const std::exception&) {
    ps.reset();
  }

  std::ostringstream rep;
  rep << "# regime comparison at omega = " << omega << " rad/s (model " << fr.row.regime
      << ", " << bundle.provenance.path << " path)\n";
  rep << "# |H_delta| per formula; rel = |H - H_main| / |H_main|\n";
  const auto norms = bg.norms_over(c.placement.z, c.placement.alpha);
  const double rbound =
      residual_bound(c.placement, cs, k, {norms.H0_W2inf, norms.E0_W1inf}, c.residual_C);
  rep << "# residual bound (C = " << c.residual_C << "): " << rbound << "\n";
  rep << "point | main | alt (rel) | quasistatic (rel) | eddy (rel) | smallk (rel) | "
         "smallalpha (rel)\n";

  bool any_point_failed = false;
  for (const auto& x : points) {
    std::ostringstream row;
    row << "[" << x.transpose() << "] ";
    try {
      const FieldPrediction main = hdelta_main(x, c.placement, bundle, bg, c.residual_C);
      const double mnorm = main.H_delta.norm();
      row << "| " << mnorm << " ";
      auto rel = [&](const CVec3& h) { return (h - main.H_delta).norm() / mnorm; };

      const FieldPrediction alt = hdelta_alt(x, c.placement, bundle, bg, c.residual_C);
      row << "| " << alt.H_delta.norm() << " (" << rel(alt.H_delta) << ") ";

      const CVec3 qs = hdelta_quasistatic(x, c.placement, bundle.M, bg.H(c.placement.z));
      row << "| " << qs.norm() << " (" << rel(qs) << ") ";

      if (conducting) {
        const cplx m_eddy = sphere_mpt_eddy(cs.mu_r, cs.nu_i, c.placement.alpha);
        const CVec3 he = c.shape_name == "sphere"
                             ? hdelta_eddy(x, c.placement, Rank2TensorC::Identity(m_eddy),
                                           bg.H(c.placement.z))
                             : hdelta_eddy(x, c.placement, bundle.M, bg.H(c.placement.z));
        row << "| " << he.norm() << " (" << rel(he) << ") ";
      } else {
        row << "| skipped (sigma_star = 0: not an eddy-current configuration) ";
      }

      if (ps && !conducting) {
        const CVec3 hk = hdelta_smallk_dielectric(x, c.placement, *ps, bg);
        row << "| " << hk.norm() << " (" << rel(hk) << ") ";
      } else if (!ps) {
        row << "| skipped (no closed-form tensors for shape '" + c.shape_name + "') ";
      } else {
        row << "| skipped (requires sigma_star = 0) ";
      }

      if (ps) {
        const CVec3 ha = hdelta_smallalpha(x, c.placement, *ps, bg);
        row << "| " << ha.norm() << " (" << rel(ha) << ")";
      } else {
        row << "| skipped (no closed-form tensors for shape '" + c.shape_name + "')";
      }
    } catch (const std::domain_error& e) {
      row << "| skipped (" << e.what() << ")";
    } catch (const std::exception& e) {
      row << "| failed (" << e.what() << ")";
      any_point_failed = true;
    }
    rep << row.str() << "\n";
  }

  std::cout << rep.str();
  const fs::path path = fs::path(out_dir) / "compare_regimes.txt";
  std::ofstream f(path);
  if (f) f << rep.str();
  return any_point_failed ? 1 : 0;
}

int cmd_plotdata(const std::string& csv_path, const std::string& csv2_path,
                 const std::vector<std::string>& series, const std::string& out_dir) {
  if (series.empty()) {
    std::cerr << "plotdata: at least one --series is required\n";
    return 2;
  }
  std::vector<std::pair<std::string, std::string>> inputs;  // (path, suffix)
  inputs.emplace_back(csv_path, "");
  if (!csv2_path.empty()) inputs.emplace_back(csv2_path, "_2");

  std::vector<PlotSeries> grids;
  for (const auto& s : series) {
    grids.clear();
    for (const auto& [path, suffix] : inputs) {
      std::ifstream f(path);
      if (!f) {
        std::cerr << "plotdata: cannot open " << path << "\n";
        return 1;
      }
      PlotSeries ps = extract_series(f, s);
      grids.push_back(ps);
      const fs::path out = fs::path(out_dir) / (s + suffix + ".dat");
      std::ofstream o(out);
      if (!o) {
        std::cerr << "plotdata: cannot write " << out << "\n";
        return 1;
      }
      for (size_t j = 0; j < ps.omega.size(); ++j) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", ps.omega[j], ps.value[j]);
        o << buf;
      }
      std::cout << "wrote " << out.string() << " (" << ps.omega.size() << " rows)\n";
    }
    if (grids.size() == 2 && grids[0].omega != grids[1].omega) {
      std::cerr << "plotdata: omega grids of the two CSV files differ for series " << s
                << "\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarizability tensors and perturbed-field evaluation for small "
               "conducting permeable objects"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", csv_path, csv2_path;
  std::vector<std::string> series;
  int workers = 1;
  bool verbose = false;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--workers", workers, "Concurrent frequency workers")
      ->capture_default_str();
  app.add_flag("--verbose", verbose, "Structured solver diagnostics on stderr");

  auto* t = app.add_subcommand("tensors", "Solve one frequency and write the tensor bundle");
  t->add_option("--config", config_path, "Run configuration file")->required();
  auto* s = app.add_subcommand("sweep", "Frequency sweep to CSV");
  s->add_option("--config", config_path, "Run configuration file")->required();
  auto* r = app.add_subcommand("compare-regimes", "Evaluate H_delta under each regime formula");
  r->add_option("--config", config_path, "Run configuration file")->required();
  auto* p = app.add_subcommand("plotdata", "Extract per-series plot files from a sweep CSV");
  p->add_option("--csv", csv_path, "Sweep CSV")->required();
  p->add_option("--csv2", csv2_path, "Second CSV for aligned overlays");
  p->add_option("--series", series, "Column names (repeatable)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (p->parsed()) return cmd_plotdata(csv_path, csv2_path, series, out_dir);
    const RunConfig cfg = load_config(config_path);
    if (t->parsed()) return cmd_tensors(cfg, out_dir, workers, verbose);
    if (s->parsed()) return cmd_sweep(cfg, out_dir, workers, verbose);
    if (r->parsed()) return cmd_compare_regimes(cfg, out_dir, workers, verbose);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // usage/config errors
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
