#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gp/density.hpp"
#include "gp/scalar_function.hpp"
#include "gp/types.hpp"

namespace gp {

// Uniform grid t_j = -L + j*dt, dt = 2L/N, N a power of two.
class Grid {
 public:
  Grid(double half_width, std::size_t point_count);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_; }
  Index ssize() const { return static_cast<Index>(n_); }
  double spacing() const { return spacing_; }
  double point(Index j) const { return -half_width_ + static_cast<double>(j) * spacing_; }
  RVector points() const;

 private:
  double half_width_;
  std::size_t n_;
  double spacing_;
};

bool is_power_of_two(std::size_t n);

// Grid discretization of L2(R, rho). Weighted objects live on the support
// subgrid (points with rho > 0); flat objects on the whole grid.
class WeightedSpace {
 public:
  WeightedSpace(Grid grid, SpectralDensity density);

  const Grid& grid() const { return grid_; }
  const SpectralDensity& density() const { return density_; }
  double bound() const { return density_.bound(); }
  double spacing() const { return grid_.spacing(); }

  // Full-grid arrays.
  const RVector& density_samples() const { return rho_; }
  const RVector& weights() const { return weights_; }
  bool in_support(Index j) const { return mask_[static_cast<std::size_t>(j)] != 0; }

  // Support subgrid.
  Index support_size() const { return static_cast<Index>(support_.size()); }
  const std::vector<Index>& support_indices() const { return support_; }
  const RVector& support_points() const { return support_points_; }
  const RVector& support_weights() const { return support_weights_; }
  const RVector& support_density() const { return support_rho_; }

  Index dimension(SpaceTag tag) const { return tag == SpaceTag::Flat ? grid_.ssize() : support_size(); }
  // Diagonal of the Gram matrix: dt on the flat side, w on the weighted side.
  RVector gram(SpaceTag tag) const;

 private:
  Grid grid_;
  SpectralDensity density_;
  RVector rho_;
  RVector weights_;
  std::vector<char> mask_;
  std::vector<Index> support_;
  RVector support_points_;
  RVector support_weights_;
  RVector support_rho_;
};

struct VectorRep {
  CVector samples;
  SpaceTag tag = SpaceTag::Flat;
};

// Matrix from the `domain` side to the `codomain` side.
struct OperatorRep {
  CMatrix matrix;
  SpaceTag domain = SpaceTag::Weighted;
  SpaceTag codomain = SpaceTag::Weighted;
};

WeightedSpace build_space(const SpectralDensity& density, double half_width, std::size_t point_count);

cplx inner_product(const VectorRep& f, const VectorRep& h, const WeightedSpace& space);
double norm(const VectorRep& f, const WeightedSpace& space);

// Restriction of a flat vector to the support subgrid.
VectorRep embed_J(const VectorRep& f, const WeightedSpace& space);
OperatorRep embed_J_operator(const WeightedSpace& space);
// J* = multiplication by rho, weighted -> flat.
OperatorRep adjoint_J(const WeightedSpace& space);
// Weighted vector placed on the full grid, zero off the support.
VectorRep extend_by_zero(const VectorRep& f, const WeightedSpace& space);

// diag(phi0(t_j)), phi0 = phi on [-M, M] and 0 outside.
OperatorRep multiplication_operator(const ScalarFunction& phi, const WeightedSpace& space,
                                    SpaceTag tag = SpaceTag::Weighted);
OperatorRep identity_operator(const WeightedSpace& space, SpaceTag tag = SpaceTag::Weighted);
// g = 1 on the requested side.
VectorRep constant_one(const WeightedSpace& space, SpaceTag tag = SpaceTag::Flat);

// B = (., g) g with g = 1, on the support subgrid.
OperatorRep perturbation_operator(const WeightedSpace& space);
// A_gamma = A + gamma B.
OperatorRep perturbed_operator(cplx gamma, const WeightedSpace& space);

// Seeded panel of smooth vectors on the support subgrid: random complex
// combinations of the first few cosine modes across the support.
std::vector<VectorRep> smooth_panel(const WeightedSpace& space, int count, std::uint64_t seed, int modes = 6);

// Adjoint with respect to the tagged inner products: G_dom^{-1} X^H G_cod.
OperatorRep adjoint(const OperatorRep& x, const WeightedSpace& space);
// x o y
OperatorRep compose(const OperatorRep& x, const OperatorRep& y);
OperatorRep add(const OperatorRep& x, const OperatorRep& y, cplx scale = 1.0);
VectorRep apply(const OperatorRep& x, const VectorRep& f);

}  // namespace gp
