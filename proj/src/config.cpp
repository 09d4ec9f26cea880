#include "mpt/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mpt {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for '" + key + "': " + v);
  }
}

Vec3 to_vec3(const std::string& key, const std::string& v) {
  std::istringstream ss(v);
  Vec3 out;
  if (!(ss >> out[0] >> out[1] >> out[2]))
    throw std::invalid_argument("config: expected three numbers for '" + key + "'");
  std::string rest;
  if (ss >> rest) throw std::invalid_argument("config: trailing data for '" + key + "'");
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::istringstream ss(v);
  std::vector<double> out;
  double x;
  while (ss >> x) out.push_back(x);
  if (!ss.eof()) throw std::invalid_argument("config: bad list for '" + key + "'");
  return out;
}

}  // namespace

UnitShape RunConfig::make_shape() const {
  if (shape_name == "sphere") return UnitShape::sphere();
  if (shape_name == "ellipsoid") return UnitShape::ellipsoid(semi_axes);
  if (shape_name == "cube") return UnitShape::cube(cube_side);
  throw std::invalid_argument("config: unknown shape '" + shape_name + "'");
}

Mesh RunConfig::make_mesh() const {
  const UnitShape shape = make_shape();
  if (boundary_layer > 0.0) {
    const RadialProfile p =
        boundary_layer_profile(resolution, truncation_radius, boundary_layer);
    return generate_mesh(shape, truncation_radius, resolution, p, 0.0);
  }
  return generate_mesh(shape, truncation_radius, resolution);
}

RunConfig parse_config_text(const std::string& text) {
  // section -> (key -> value), preserving strictness.
  std::map<std::string, std::map<std::string, std::string>> kv;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: bad section header at line " +
                                    std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (!kv.emplace(section, std::map<std::string, std::string>{}).second &&
          kv[section].empty()) {
        // duplicate empty section is harmless
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument("config: key outside a [section] at line " +
                                  std::to_string(lineno));
    if (!kv[section].emplace(key, value).second)
      throw std::invalid_argument("config: duplicate key '" + key + "' in [" + section +
                                  "]");
  }

  static const std::map<std::string, std::set<std::string>> known = {
      {"material", {"eps_star", "eps_r", "mu_star", "mu_r", "sigma_star"}},
      {"object", {"shape", "semi_axes", "side", "alpha", "center"}},
      {"sweep", {"omega", "omega_list", "omega_min", "omega_max", "count"}},
      {"solver",
       {"mode", "resolution", "truncation_radius", "tolerance", "max_iterations",
        "regularization", "method", "boundary_layer", "model", "quadrature_order"}},
      {"regime", {"alpha_over_lambda", "eps_omega_over_sigma"}},
      {"background", {"kind", "h", "direction", "polarization", "amplitude"}},
      {"output", {"csv", "bundle"}},
      {"points", {"list"}},
      {"field", {"residual_C"}},
  };
  for (const auto& [sec, keys] : kv) {
    const auto it = known.find(sec);
    if (it == known.end())
      throw std::invalid_argument("config: unknown section [" + sec + "]");
    for (const auto& [key, value] : keys) {
      (void)value;
      if (!it->second.count(key))
        throw std::invalid_argument("config: unknown key '" + key + "' in [" + sec + "]");
    }
  }

  RunConfig cfg;
  auto get = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
    const auto s = kv.find(sec);
    if (s == kv.end()) return std::nullopt;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
  };

  // material
  if (auto v = get("material", "eps_star"))
    cfg.material.eps_star = to_double("eps_star", *v);
  if (auto v = get("material", "eps_r"))
    cfg.material.eps_star = to_double("eps_r", *v) * constants::eps0;
  if (auto v = get("material", "mu_star")) cfg.material.mu_star = to_double("mu_star", *v);
  if (auto v = get("material", "mu_r"))
    cfg.material.mu_star = to_double("mu_r", *v) * constants::mu0;
  if (auto v = get("material", "sigma_star"))
    cfg.material.sigma_star = to_double("sigma_star", *v);
  if (get("material", "eps_star") && get("material", "eps_r"))
    throw std::invalid_argument("config: give eps_star or eps_r, not both");
  if (get("material", "mu_star") && get("material", "mu_r"))
    throw std::invalid_argument("config: give mu_star or mu_r, not both");

  // object
  if (auto v = get("object", "shape")) cfg.shape_name = *v;
  if (auto v = get("object", "semi_axes")) cfg.semi_axes = to_vec3("semi_axes", *v);
  if (auto v = get("object", "side")) cfg.cube_side = to_double("side", *v);
  if (auto v = get("object", "alpha")) cfg.placement.alpha = to_double("alpha", *v);
  if (auto v = get("object", "center")) cfg.placement.z = to_vec3("center", *v);

  // sweep
  {
    const bool has_single = bool(get("sweep", "omega"));
    const bool has_list = bool(get("sweep", "omega_list"));
    const bool has_range = bool(get("sweep", "omega_min")) || bool(get("sweep", "omega_max"));
    if (int(has_single) + int(has_list) + int(has_range) > 1)
      throw std::invalid_argument("config: give omega, omega_list, or a range, not several");
    if (has_single) {
      cfg.omegas = {to_double("omega", *get("sweep", "omega"))};
    } else if (has_list) {
      cfg.omegas = to_list("omega_list", *get("sweep", "omega_list"));
    } else if (has_range) {
      if (!get("sweep", "omega_min") || !get("sweep", "omega_max"))
        throw std::invalid_argument("config: omega_min and omega_max are both required");
      const double lo = to_double("omega_min", *get("sweep", "omega_min"));
      const double hi = to_double("omega_max", *get("sweep", "omega_max"));
      int count = 40;
      if (auto v = get("sweep", "count")) count = int(to_double("count", *v));
      if (!(lo > 0.0 && hi > lo && count >= 1))
        throw std::invalid_argument("config: bad sweep range");
      if (count == 1) {
        cfg.omegas = {lo};
      } else {
        // log-spaced
        for (int j = 0; j < count; ++j)
          cfg.omegas.push_back(
              std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * j / (count - 1)));
      }
    }
    if (get("sweep", "count") && !has_range)
      throw std::invalid_argument("config: count requires omega_min/omega_max");
    std::sort(cfg.omegas.begin(), cfg.omegas.end());
  }

  // solver
  if (auto v = get("solver", "mode")) {
    if (*v == "analytic")
      cfg.mode = RunConfig::Mode::Analytic;
    else if (*v == "fem")
      cfg.mode = RunConfig::Mode::Fem;
    else
      throw std::invalid_argument("config: solver mode must be analytic or fem");
  }
  if (auto v = get("solver", "resolution")) cfg.resolution = to_double("resolution", *v);
  if (auto v = get("solver", "truncation_radius"))
    cfg.truncation_radius = to_double("truncation_radius", *v);
  if (auto v = get("solver", "tolerance")) cfg.solver.rel_tol = to_double("tolerance", *v);
  if (auto v = get("solver", "max_iterations"))
    cfg.solver.max_iterations = int(to_double("max_iterations", *v));
  if (auto v = get("solver", "regularization"))
    cfg.solver.regularization = to_double("regularization", *v);
  if (auto v = get("solver", "quadrature_order"))
    cfg.solver.quadrature_order = int(to_double("quadrature_order", *v));
  if (auto v = get("solver", "method")) {
    if (*v == "auto")
      cfg.solver.method = SolveMethod::Auto;
    else if (*v == "direct")
      cfg.solver.method = SolveMethod::Direct;
    else if (*v == "iterative")
      cfg.solver.method = SolveMethod::Iterative;
    else
      throw std::invalid_argument("config: method must be auto, direct, or iterative");
  }
  if (auto v = get("solver", "boundary_layer"))
    cfg.boundary_layer = to_double("boundary_layer", *v);
  if (auto v = get("solver", "model")) {
    if (*v == "auto")
      cfg.model = RunConfig::Model::Auto;
    else if (*v == "full")
      cfg.model = RunConfig::Model::Full;
    else if (*v == "eddy")
      cfg.model = RunConfig::Model::Eddy;
    else if (*v == "static")
      cfg.model = RunConfig::Model::Static;
    else
      throw std::invalid_argument("config: model must be auto, full, eddy, or static");
  }

  // regime thresholds
  if (auto v = get("regime", "alpha_over_lambda"))
    cfg.thresholds.alpha_over_lambda = to_double("alpha_over_lambda", *v);
  if (auto v = get("regime", "eps_omega_over_sigma"))
    cfg.thresholds.eps_omega_over_sigma = to_double("eps_omega_over_sigma", *v);

  // background
  if (auto v = get("background", "kind")) {
    if (*v != "uniform" && *v != "planewave")
      throw std::invalid_argument("config: background kind must be uniform or planewave");
    cfg.background_kind = *v;
  }
  if (auto v = get("background", "h")) cfg.background_h = to_vec3("h", *v);
  if (auto v = get("background", "direction"))
    cfg.background_direction = to_vec3("direction", *v);
  if (auto v = get("background", "polarization"))
    cfg.background_polarization = to_vec3("polarization", *v);
  if (auto v = get("background", "amplitude"))
    cfg.background_amplitude = to_double("amplitude", *v);

  // output
  if (auto v = get("output", "csv")) cfg.csv_path = *v;
  if (auto v = get("output", "bundle")) cfg.bundle_path = *v;

  // points
  if (auto v = get("points", "list")) {
    std::string item;
    std::istringstream ss(*v);
    while (std::getline(ss, item, ';')) {
      item = trim(item);
      if (item.empty()) continue;
      cfg.points.push_back(to_vec3("points.list", item));
    }
  }

  // field
  if (auto v = get("field", "residual_C")) cfg.residual_C = to_double("residual_C", *v);

  cfg.material.validate();
  cfg.placement.validate();
  cfg.make_shape();  // validates shape parameters
  if (cfg.omegas.empty())
    throw std::invalid_argument("config: a [sweep] frequency specification is required");
  for (double w : cfg.omegas)
    if (!(w > 0.0)) throw std::invalid_argument("config: omegas must be > 0");
  cfg.solver.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace mpt
