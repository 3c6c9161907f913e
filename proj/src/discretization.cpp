#include "gp/discretization.hpp"

#include <cmath>
#include <random>

namespace gp {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Grid::Grid(double half_width, std::size_t point_count)
    : half_width_(half_width), n_(point_count), spacing_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidArgument("grid half-width L must be positive");
  if (!is_power_of_two(point_count)) throw InvalidArgument("grid point count N must be a power of two");
  spacing_ = 2.0 * half_width / static_cast<double>(point_count);
}

RVector Grid::points() const {
  RVector t(ssize());
  for (Index j = 0; j < ssize(); ++j) t(j) = point(j);
  return t;
}

WeightedSpace::WeightedSpace(Grid grid, SpectralDensity density)
    : grid_(std::move(grid)), density_(std::move(density)) {
  const Index n = grid_.ssize();
  rho_.resize(n);
  weights_.resize(n);
  mask_.assign(static_cast<std::size_t>(n), 0);
  for (Index j = 0; j < n; ++j) {
    const double v = density_(grid_.point(j));
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("density is negative or non-finite on the grid");
    rho_(j) = v;
    weights_(j) = v * grid_.spacing();
    if (v > 0.0) {
      mask_[static_cast<std::size_t>(j)] = 1;
      support_.push_back(j);
    }
  }
  const Index ns = support_size();
  support_points_.resize(ns);
  support_weights_.resize(ns);
  support_rho_.resize(ns);
  for (Index s = 0; s < ns; ++s) {
    const Index j = support_[static_cast<std::size_t>(s)];
    support_points_(s) = grid_.point(j);
    support_weights_(s) = weights_(j);
    support_rho_(s) = rho_(j);
  }
}

RVector WeightedSpace::gram(SpaceTag tag) const {
  if (tag == SpaceTag::Flat) return RVector::Constant(grid_.ssize(), grid_.spacing());
  return support_weights_;
}

WeightedSpace build_space(const SpectralDensity& density, double half_width, std::size_t point_count) {
  if (!is_power_of_two(point_count)) throw InvalidArgument("grid point count N must be a power of two");
  if (point_count < 64) throw InvalidArgument("grid point count N must be at least 64");
  if (half_width < 2.0 * density.bound()) {
    throw InvalidArgument("padding violation: L must be at least 2M");
  }
  return WeightedSpace(Grid(half_width, point_count), density);
}

namespace {

void check_size(const VectorRep& f, const WeightedSpace& space) {
  if (f.samples.size() != space.dimension(f.tag)) {
    throw TagMismatch(std::string("vector length does not match its ") + to_string(f.tag) + " space");
  }
}

}  // namespace

cplx inner_product(const VectorRep& f, const VectorRep& h, const WeightedSpace& space) {
  if (f.tag != h.tag) throw TagMismatch("inner product of vectors with different tags");
  check_size(f, space);
  check_size(h, space);
  const RVector g = space.gram(f.tag);
  cplx acc = 0.0;
  for (Index j = 0; j < f.samples.size(); ++j) acc += f.samples(j) * std::conj(h.samples(j)) * g(j);
  return acc;
}

double norm(const VectorRep& f, const WeightedSpace& space) {
  return std::sqrt(std::max(0.0, inner_product(f, f, space).real()));
}

VectorRep embed_J(const VectorRep& f, const WeightedSpace& space) {
  if (f.tag != SpaceTag::Flat) throw TagMismatch("embed_J expects a FLAT vector");
  check_size(f, space);
  VectorRep out{CVector(space.support_size()), SpaceTag::Weighted};
  for (Index s = 0; s < space.support_size(); ++s) {
    out.samples(s) = f.samples(space.support_indices()[static_cast<std::size_t>(s)]);
  }
  return out;
}

OperatorRep embed_J_operator(const WeightedSpace& space) {
  OperatorRep op{CMatrix::Zero(space.support_size(), space.grid().ssize()), SpaceTag::Flat, SpaceTag::Weighted};
  for (Index s = 0; s < space.support_size(); ++s) op.matrix(s, space.support_indices()[static_cast<std::size_t>(s)]) = 1.0;
  return op;
}

OperatorRep adjoint_J(const WeightedSpace& space) {
  OperatorRep op{CMatrix::Zero(space.grid().ssize(), space.support_size()), SpaceTag::Weighted, SpaceTag::Flat};
  for (Index s = 0; s < space.support_size(); ++s) {
    op.matrix(space.support_indices()[static_cast<std::size_t>(s)], s) = space.support_density()(s);
  }
  return op;
}

VectorRep extend_by_zero(const VectorRep& f, const WeightedSpace& space) {
  if (f.tag != SpaceTag::Weighted) throw TagMismatch("extend_by_zero expects a WEIGHTED vector");
  check_size(f, space);
  VectorRep out{CVector::Zero(space.grid().ssize()), SpaceTag::Flat};
  for (Index s = 0; s < space.support_size(); ++s) {
    out.samples(space.support_indices()[static_cast<std::size_t>(s)]) = f.samples(s);
  }
  return out;
}

OperatorRep multiplication_operator(const ScalarFunction& phi, const WeightedSpace& space, SpaceTag tag) {
  const double m = space.bound();
  const Index n = space.dimension(tag);
  CVector diag(n);
  for (Index k = 0; k < n; ++k) {
    const double t = tag == SpaceTag::Flat ? space.grid().point(k) : space.support_points()(k);
    const cplx v = (t >= -m && t <= m) ? phi(t) : cplx(0.0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidArgument("phi is not finite at t = " + std::to_string(t));
    }
    diag(k) = v;
  }
  return {CMatrix(diag.asDiagonal()), tag, tag};
}

OperatorRep identity_operator(const WeightedSpace& space, SpaceTag tag) {
  const Index n = space.dimension(tag);
  return {CMatrix::Identity(n, n), tag, tag};
}

VectorRep constant_one(const WeightedSpace& space, SpaceTag tag) {
  return {CVector::Ones(space.dimension(tag)), tag};
}

OperatorRep perturbation_operator(const WeightedSpace& space) {
  const Index n = space.support_size();
  CMatrix b = CMatrix::Zero(n, n);
  b.rowwise() = space.support_weights().transpose().cast<cplx>();
  return {b, SpaceTag::Weighted, SpaceTag::Weighted};
}

OperatorRep perturbed_operator(cplx gamma, const WeightedSpace& space) {
  OperatorRep a = perturbation_operator(space);
  a.matrix *= gamma;
  a.matrix.diagonal() += space.support_points().cast<cplx>();
  return a;
}

std::vector<VectorRep> smooth_panel(const WeightedSpace& space, int count, std::uint64_t seed, int modes) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double a = space.density().support_lo();
  const double b = space.density().support_hi();
  std::vector<VectorRep> panel;
  for (int p = 0; p < count; ++p) {
    std::vector<cplx> coef;
    for (int k = 0; k < modes; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      coef.emplace_back(re, im);
    }
    VectorRep f{CVector::Zero(space.support_size()), SpaceTag::Weighted};
    for (Index s = 0; s < space.support_size(); ++s) {
      const double x = (space.support_points()(s) - a) / (b - a);
      for (int k = 0; k < modes; ++k) f.samples(s) += coef[static_cast<std::size_t>(k)] * std::cos(kPi * k * x);
    }
    panel.push_back(std::move(f));
  }
  return panel;
}

OperatorRep adjoint(const OperatorRep& x, const WeightedSpace& space) {
  const RVector gd = space.gram(x.domain);
  const RVector gc = space.gram(x.codomain);
  if (x.matrix.cols() != gd.size() || x.matrix.rows() != gc.size()) {
    throw TagMismatch("operator shape does not match its tags");
  }
  CMatrix adj = x.matrix.adjoint();
  adj = gd.cwiseInverse().asDiagonal() * adj * gc.asDiagonal();
  return {adj, x.codomain, x.domain};
}

OperatorRep compose(const OperatorRep& x, const OperatorRep& y) {
  if (x.domain != y.codomain) throw TagMismatch("composition of incompatible tags");
  if (x.matrix.cols() != y.matrix.rows()) throw TagMismatch("composition of incompatible shapes");
  return {x.matrix * y.matrix, y.domain, x.codomain};
}

OperatorRep add(const OperatorRep& x, const OperatorRep& y, cplx scale) {
  if (x.domain != y.domain || x.codomain != y.codomain) throw TagMismatch("sum of operators with different tags");
  return {x.matrix + scale * y.matrix, x.domain, x.codomain};
}

VectorRep apply(const OperatorRep& x, const VectorRep& f) {
  if (x.domain != f.tag) throw TagMismatch("operator applied to a vector with the wrong tag");
  if (x.matrix.cols() != f.samples.size()) throw TagMismatch("operator applied to a vector of the wrong length");
  return {x.matrix * f.samples, x.codomain};
}

}  // namespace gp
