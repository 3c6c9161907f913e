#pragma once

#include <vector>

#include "gp/density.hpp"
#include "gp/types.hpp"

namespace gp {

enum class BtbVerdict { Bounded, LogDivergent, Inconclusive };
const char* to_string(BtbVerdict v);

struct BtbOptions {
  // Decreasing, spanning at least two decades.
  std::vector<double> eps_schedule{1e-1, 4.6415888336127775e-2, 2.154434690031884e-2, 1e-2,
                                   4.6415888336127775e-3, 2.154434690031884e-3, 1e-3};
  double half_width = 4.0;
  std::size_t points = 4096;
  // Extra x samples per grid cell within a few cells of the support ends.
  int endpoint_refine = 4;
  // BOUNDED when the last decade's sups agree within this factor.
  double bounded_factor = 1.10;
  double min_r2 = 0.99;
  // LOG_DIVERGENT needs slope >= this fraction of the final sup.
  double min_relative_slope = 0.05;
  // Upper half-plane mesh: dyadic heights from mesh_y_max down to mesh_y_min.
  double mesh_y_max = 2.0;
  double mesh_y_min = 1e-3;
};

struct BTBReport {
  std::vector<double> eps;
  std::vector<double> sup;
  std::vector<double> argmax;
  double fit_c0 = 0.0;
  double fit_c1 = 0.0;
  double fit_r2 = 0.0;
  double last_decade_ratio = 1.0;
  BtbVerdict verdict = BtbVerdict::Inconclusive;
  double half_plane_sup = 0.0;
  cplx half_plane_argmax{0.0, 0.0};
  std::size_t mesh_points = 0;
};

BTBReport btb_analyze(const SpectralDensity& density, const BtbOptions& options = {});

}  // namespace gp
