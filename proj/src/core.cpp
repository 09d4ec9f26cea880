#include "mpt/core.hpp"

namespace mpt {

void MaterialSpec::validate() const {
  if (!(eps_star > 0.0)) throw std::domain_error("MaterialSpec: eps_star must be > 0");
  if (!(mu_star > 0.0)) throw std::domain_error("MaterialSpec: mu_star must be > 0");
  if (!(sigma_star >= 0.0)) throw std::domain_error("MaterialSpec: sigma_star must be >= 0");
}

void Excitation::validate() const {
  if (!(omega > 0.0)) throw std::domain_error("Excitation: omega must be > 0");
}

void ObjectPlacement::validate() const {
  if (!(alpha > 0.0)) throw std::domain_error("ObjectPlacement: alpha must be > 0");
}

ContrastSet derive_contrasts(const MaterialSpec& mat, const Excitation& exc,
                             const ObjectPlacement& placement) {
  mat.validate();
  exc.validate();
  placement.validate();

  using constants::eps0;
  using constants::mu0;

  ContrastSet cs;
  cs.eps_r = cplx(mat.eps_star / eps0, mat.sigma_star / (exc.omega * eps0));
  cs.mu_r = mat.mu_star / mu0;
  const double k = exc.k();
  const double a = placement.alpha;
  cs.k_alpha = k * a;
  cs.nu = a * a * k * k * (cs.eps_r - 1.0);
  cs.nu_r = (mat.eps_star - eps0) * mu0 * exc.omega * exc.omega * a * a;
  cs.nu_i = mat.sigma_star * mu0 * exc.omega * a * a;
  return cs;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::FullModel: return "full";
    case Regime::QuasiStatic: return "quasistatic";
    case Regime::EddyCurrent: return "eddy";
    case Regime::SmallKDielectric: return "smallk-dielectric";
    case Regime::SmallAlpha: return "small-alpha";
  }
  return "?";
}

Regime classify_regime(const ContrastSet& cs, const Excitation& exc,
                       const ObjectPlacement& placement, const MaterialSpec& mat,
                       const RegimeThresholds& thresholds) {
  const double alpha_over_lambda = placement.alpha / exc.wavelength();
  const bool quasistatic = alpha_over_lambda <= thresholds.alpha_over_lambda;
  const bool conducting =
      mat.sigma_star > 0.0 &&
      mat.eps_star * exc.omega / mat.sigma_star <= thresholds.eps_omega_over_sigma;
  (void)cs;
  if (quasistatic && conducting) return Regime::EddyCurrent;
  if (quasistatic) return Regime::QuasiStatic;
  return Regime::FullModel;
}

}  // namespace mpt
