#pragma once

#include <vector>

#include "gp/density.hpp"
#include "gp/discretization.hpp"
#include "gp/types.hpp"

namespace gp {

// DFT convention: forward f_hat(w) = sum f(t) e^{-i w t}; P+ keeps w > 0,
// weight 1/2 on the self-conjugate bins (w = 0 and Nyquist).
RVector riesz_multiplier(std::size_t n);
RVector hilbert_multiplier(std::size_t n);

VectorRep riesz_projection(const VectorRep& f);
VectorRep conjugate_projection(const VectorRep& f);
VectorRep hilbert_transform(const VectorRep& f);

// Line Cauchy projection on the grid: (Pi f)_j = f_j/2 + sum_{k!=j} f_k / (2 pi i (k - j)).
// This is the eps -> 0 limit of the smoothed projection sampled on the grid
// (Plemelj), applied by zero-padded FFT convolution.
VectorRep cauchy_projection(const VectorRep& f);
// Dense block of the same kernel between two point sets of one grid.
CMatrix cauchy_projection_block(const RVector& rows, const RVector& cols, double dt);

// Direct quadrature of (1/2 pi i) int f(s) / (s - u - i eps) ds at the grid points.
VectorRep smoothed_projection(const VectorRep& f, double eps, const Grid& grid);
// Same, at arbitrary points u with the values f(u) supplied.
CVector smoothed_projection_at(const VectorRep& f, double eps, const Grid& grid, const RVector& u,
                               const CVector& f_at_u);

struct BorelOptions {
  // Evaluations with 0 < |Im lambda| < shift and Re lambda on the support are
  // moved to |Im lambda| = shift, shift = max(min_shift, 2 * grid_spacing).
  double min_shift = 1e-6;
  double grid_spacing = 0.0;
  // 0 picks the node count from the distance to the support.
  int nodes = 0;
  bool estimate_error = true;
};

struct BorelEvaluation {
  cplx lambda;       // requested point
  cplx evaluated_at; // after any shift
  double shift = 0.0;
  cplx value;
  double error_estimate = 0.0;
};

BorelEvaluation borel_transform(const SpectralDensity& density, cplx lambda, const BorelOptions& options = {});
// int rho(t) / (t - lambda)^2 dt
cplx borel_derivative(const SpectralDensity& density, cplx lambda, const BorelOptions& options = {});
// Values only, for meshes. Points must be off the support.
CVector borel_batch(const SpectralDensity& density, const CVector& lambdas, int nodes);

// Mass of [a, b] from boundary values of Im B(t + i tau), extrapolated to tau -> 0.
double stieltjes_inversion(const SpectralDensity& density, double a, double b,
                           const std::vector<double>& tau_schedule);

}  // namespace gp
