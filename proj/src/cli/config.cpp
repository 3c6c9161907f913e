#include "gp/cli/config.hpp"

#include <cmath>

#include "gp/btb.hpp"
#include "gp/discretization.hpp"

namespace gp::cli {

using nlohmann::json;

namespace {

json& walk(json& root, const std::string& dotted, const std::string& full) {
  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError(full, "empty path component in override");
    if (!node->is_object()) {
      if (!node->is_null()) throw ConfigError(full, "override descends into a non-object");
      *node = json::object();
    }
    node = &(*node)[key];
    if (dot == std::string::npos) return *node;
    start = dot + 1;
  }
}

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return text;
  }
}

const json& at(const json& obj, const char* key) { return obj.at(key); }

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

double get_number(const json& obj, const char* key, double fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  const json& v = at(obj, key);
  if (!v.is_number()) throw ConfigError(join(path, key), "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(join(path, key), "must be finite");
  return x;
}

long long get_integer(const json& obj, const char* key, long long fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  const json& v = at(obj, key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(join(path, key), "must be an integer");
  return v.get<long long>();
}

json section(const json& root, const char* key) {
  if (!root.contains(key)) return json::object();
  const json& v = root.at(key);
  if (!v.is_object()) throw ConfigError(key, "must be an object");
  return v;
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_object() && v.contains("re")) {
    return {v.at("re").get<double>(), v.value("im", 0.0)};
  }
  throw ConfigError(field, "expected a number, [re, im] or {re, im}");
}

json apply_overrides(json config, const std::vector<std::string>& args) {
  if (config.is_null()) config = json::object();
  for (std::size_t k = 0; k < args.size(); ++k) {
    const std::string& arg = args[k];
    if (arg.rfind("--", 0) != 0) throw ConfigError(arg, "unexpected argument");
    std::string body = arg.substr(2);
    std::string value;
    const std::size_t eq = body.find('=');
    if (eq != std::string::npos) {
      value = body.substr(eq + 1);
      body = body.substr(0, eq);
    } else {
      if (k + 1 >= args.size()) throw ConfigError(body, "override is missing a value");
      value = args[++k];
    }
    walk(config, body, body) = parse_value(value);
  }
  return config;
}

ExperimentConfig parse_config(const json& root) {
  if (!root.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  ExperimentConfig cfg;

  // density
  json density = root.contains("density") ? root.at("density") : json{{"name", "semicircle"}};
  if (density.is_string()) density = json{{"name", density}};
  try {
    cfg.density = density_from_json(density);
  } catch (const InvalidArgument& e) {
    throw ConfigError("density", e.what());
  }

  // grid
  const json grid = section(root, "grid");
  cfg.half_width = get_number(grid, "L", 4.0, "grid");
  const long long n = get_integer(grid, "N", 1024, "grid");
  if (n <= 0 || !is_power_of_two(static_cast<std::size_t>(n))) throw ConfigError("grid.N", "must be a power of two");
  if (n < 64) throw ConfigError("grid.N", "must be at least 64");
  cfg.points = static_cast<std::size_t>(n);
  if (cfg.half_width < 2.0 * cfg.density.bound()) {
    throw ConfigError("grid.L", "padding violation: L must be at least 2M = " + std::to_string(2.0 * cfg.density.bound()));
  }

  // gamma
  json gamma = root.contains("gamma") ? root.at("gamma") : json{{"kind", "single"}, {"value", 0.05}};
  if (gamma.is_number() || gamma.is_array()) gamma = json{{"kind", "single"}, {"value", gamma}};
  if (!gamma.is_object()) throw ConfigError("gamma", "must be an object");
  const std::string kind = gamma.value("kind", "single");
  if (kind == "single") {
    cfg.gammas = {complex_from_json(gamma.value("value", json(0.05)), "gamma.value")};
  } else if (kind == "circle") {
    const double radius = get_number(gamma, "radius", 0.1, "gamma");
    const long long count = get_integer(gamma, "count", 8, "gamma");
    const cplx center = complex_from_json(gamma.value("center", json(0.0)), "gamma.center");
    if (!(radius > 0.0)) throw ConfigError("gamma.radius", "must be positive");
    if (count < 1) throw ConfigError("gamma.count", "must be positive");
    for (long long k = 0; k < count; ++k) {
      cfg.gammas.push_back(center + radius * std::exp(kI * (2.0 * kPi * static_cast<double>(k) / static_cast<double>(count))));
    }
  } else if (kind == "list") {
    if (!gamma.contains("values") || !gamma.at("values").is_array() || gamma.at("values").empty()) {
      throw ConfigError("gamma.values", "must be a nonempty array");
    }
    std::size_t k = 0;
    for (const auto& v : gamma.at("values")) cfg.gammas.push_back(complex_from_json(v, "gamma.values[" + std::to_string(k++) + "]"));
  } else {
    throw ConfigError("gamma.kind", "must be single, circle or list");
  }

  // phi
  json phi = root.contains("phi") ? root.at("phi") : json{{"name", "abs"}};
  if (phi.is_string()) phi = json{{"name", phi}};
  if (!phi.is_object()) throw ConfigError("phi", "must be an object or a name");
  cfg.phi_name = phi.value("name", "abs");
  try {
    if (cfg.phi_name == "table") {
      cfg.phi = functions::table(phi.at("nodes").get<std::vector<double>>(), phi.at("values").get<std::vector<double>>());
    } else {
      cfg.phi = functions::by_name(cfg.phi_name);
    }
  } catch (const json::exception& e) {
    throw ConfigError("phi", e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError("phi.name", e.what());
  }

  // tolerances
  const json tol = section(root, "tolerances");
  for (auto it = tol.begin(); it != tol.end(); ++it) {
    static const char* known[] = {"waveop", "adjoint", "fixed_point", "calculus", "derivative_exact",
                                  "derivative_fd", "holomorphy", "secular_residual", "contour_gap",
                                  "witness_margin", "witness_residual", "spectrum"};
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ConfigError("tolerances." + it.key(), "unknown tolerance");
    if (!it.value().is_number() || it.value().get<double>() < 0.0) {
      throw ConfigError("tolerances." + it.key(), "must be a nonnegative number");
    }
  }
  Tolerances& t = cfg.tol;
  t.waveop = get_number(tol, "waveop", t.waveop, "tolerances");
  t.adjoint = get_number(tol, "adjoint", t.adjoint, "tolerances");
  t.fixed_point = get_number(tol, "fixed_point", t.fixed_point, "tolerances");
  t.calculus = get_number(tol, "calculus", t.calculus, "tolerances");
  t.derivative_exact = get_number(tol, "derivative_exact", t.derivative_exact, "tolerances");
  t.derivative_fd = get_number(tol, "derivative_fd", t.derivative_fd, "tolerances");
  t.holomorphy = get_number(tol, "holomorphy", t.holomorphy, "tolerances");
  t.secular_residual = get_number(tol, "secular_residual", t.secular_residual, "tolerances");
  t.contour_gap = get_number(tol, "contour_gap", t.contour_gap, "tolerances");
  t.witness_margin = get_number(tol, "witness_margin", t.witness_margin, "tolerances");
  t.witness_residual = get_number(tol, "witness_residual", t.witness_residual, "tolerances");
  t.spectrum = get_number(tol, "spectrum", t.spectrum, "tolerances");

  if (root.contains("output_dir")) {
    if (!root.at("output_dir").is_string()) throw ConfigError("output_dir", "must be a string");
    cfg.output_dir = root.at("output_dir").get<std::string>();
  }
  const long long seed = get_integer(root, "seed", 1, "");
  if (seed < 0) throw ConfigError("seed", "must be nonnegative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  if (root.contains("refine")) {
    if (!root.at("refine").is_boolean()) throw ConfigError("refine", "must be a boolean");
    cfg.refine = root.at("refine").get<bool>();
  }

  const json witness = section(root, "witness");
  cfg.witness_n_max = static_cast<int>(get_integer(witness, "n_max", 3, "witness"));
  if (cfg.witness_n_max < 1 || cfg.witness_n_max > 8) throw ConfigError("witness.n_max", "must be in [1, 8]");

  const json secular = section(root, "secular");
  Region& r = cfg.secular_region;
  const double span = 3.0 * cfg.density.bound();
  r.re_min = get_number(secular, "re_min", -span, "secular");
  r.re_max = get_number(secular, "re_max", span, "secular");
  r.im_min = get_number(secular, "im_min", 0.0, "secular");
  r.im_max = get_number(secular, "im_max", 0.0, "secular");
  r.mesh = static_cast<int>(get_integer(secular, "mesh", 24, "secular"));
  r.support_margin = get_number(secular, "support_margin", 1e-3, "secular");
  if (r.re_min > r.re_max || r.im_min > r.im_max) throw ConfigError("secular", "region is empty");
  if (r.mesh < 1) throw ConfigError("secular.mesh", "must be positive");

  const json contour = section(root, "contour");
  cfg.contour_center = complex_from_json(contour.value("center", json(3.0)), "contour.center");
  cfg.contour_radius = get_number(contour, "radius", 0.5, "contour");
  cfg.contour_nodes = static_cast<int>(get_integer(contour, "nodes", 64, "contour"));
  if (!(cfg.contour_radius > 0.0)) throw ConfigError("contour.radius", "must be positive");
  if (cfg.contour_nodes < 8 || cfg.contour_nodes % 2) throw ConfigError("contour.nodes", "must be even and >= 8");

  const json holo = section(root, "holomorphy");
  cfg.holomorphy_radius_fraction = get_number(holo, "radius_fraction", 0.5, "holomorphy");
  cfg.holomorphy_nodes = static_cast<int>(get_integer(holo, "nodes", 64, "holomorphy"));
  if (!(cfg.holomorphy_radius_fraction > 0.0 && cfg.holomorphy_radius_fraction < 1.0)) {
    throw ConfigError("holomorphy.radius_fraction", "must be in (0, 1)");
  }
  if (cfg.holomorphy_nodes < 4) throw ConfigError("holomorphy.nodes", "must be at least 4");

  const json btb = section(root, "btb");
  const long long bn = get_integer(btb, "N", 4096, "btb");
  if (bn < 64 || !is_power_of_two(static_cast<std::size_t>(bn))) throw ConfigError("btb.N", "must be a power of two >= 64");
  cfg.btb_points = static_cast<std::size_t>(bn);
  cfg.btb_eps = BtbOptions{}.eps_schedule;
  if (btb.contains("eps")) {
    try {
      cfg.btb_eps = btb.at("eps").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ConfigError("btb.eps", "must be an array of numbers");
    }
  }

  // Resolved echo: stable key order (nlohmann sorts object keys).
  json echo;
  echo["density"] = density_to_json(cfg.density);
  echo["grid"] = {{"L", cfg.half_width}, {"N", cfg.points}};
  json gs = json::array();
  for (const cplx& g : cfg.gammas) gs.push_back(complex_to_json(g));
  echo["gamma"] = {{"kind", kind}, {"values", gs}};
  echo["phi"] = phi;
  echo["tolerances"] = {{"waveop", t.waveop}, {"adjoint", t.adjoint}, {"fixed_point", t.fixed_point},
                        {"calculus", t.calculus}, {"derivative_exact", t.derivative_exact},
                        {"derivative_fd", t.derivative_fd}, {"holomorphy", t.holomorphy},
                        {"secular_residual", t.secular_residual}, {"contour_gap", t.contour_gap},
                        {"witness_margin", t.witness_margin}, {"witness_residual", t.witness_residual},
                        {"spectrum", t.spectrum}};
  echo["output_dir"] = cfg.output_dir;
  echo["seed"] = cfg.seed;
  echo["refine"] = cfg.refine;
  echo["witness"] = {{"n_max", cfg.witness_n_max}};
  echo["secular"] = {{"re_min", r.re_min}, {"re_max", r.re_max}, {"im_min", r.im_min}, {"im_max", r.im_max},
                     {"mesh", r.mesh}, {"support_margin", r.support_margin}};
  echo["contour"] = {{"center", complex_to_json(cfg.contour_center)}, {"radius", cfg.contour_radius},
                     {"nodes", cfg.contour_nodes}};
  echo["holomorphy"] = {{"radius_fraction", cfg.holomorphy_radius_fraction}, {"nodes", cfg.holomorphy_nodes}};
  echo["btb"] = {{"N", cfg.btb_points}, {"eps", cfg.btb_eps}};
  cfg.echo = echo;
  return cfg;
}

}  // namespace gp::cli
