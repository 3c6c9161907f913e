#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gp/density.hpp"
#include "gp/scalar_function.hpp"
#include "gp/spectra.hpp"
#include "gp/types.hpp"

namespace gp::cli {

// Invalid configuration; `field` is the dotted path of the offending entry.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, const std::string& message)
      : InvalidArgument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Tolerances {
  double waveop = 1e-3;
  double adjoint = 1e-10;
  double fixed_point = 1e-6;
  double calculus = 1e-3;
  double derivative_exact = 1e-6;
  double derivative_fd = 1e-3;
  double holomorphy = 1e-6;
  double secular_residual = 1e-10;
  double contour_gap = 0.05;
  double witness_margin = 0.05;
  double witness_residual = 1e-6;
  double spectrum = 0.0;
};

struct ExperimentConfig {
  nlohmann::json echo;  // fully resolved config, defaults filled in
  SpectralDensity density = density_library("semicircle");
  double half_width = 4.0;
  std::size_t points = 1024;
  std::vector<cplx> gammas;
  std::string phi_name = "abs";
  ScalarFunction phi;
  Tolerances tol;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  bool refine = false;
  int witness_n_max = 3;
  Region secular_region;
  cplx contour_center{3.0, 0.0};
  double contour_radius = 0.5;
  int contour_nodes = 64;
  double holomorphy_radius_fraction = 0.5;
  int holomorphy_nodes = 64;
  std::size_t btb_points = 4096;
  std::vector<double> btb_eps;
};

// Applies "--a.b=value" / "--a.b value" overrides. Values parse as JSON when
// possible, otherwise as strings.
nlohmann::json apply_overrides(nlohmann::json config, const std::vector<std::string>& args);

ExperimentConfig parse_config(const nlohmann::json& config);

nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& v, const std::string& field);

}  // namespace gp::cli
