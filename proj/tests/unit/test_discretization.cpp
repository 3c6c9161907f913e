#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "gp/discretization.hpp"
#include "gp/linalg.hpp"

using namespace gp;

namespace {
const SpectralDensity kIndicator = density_library("indicator");
const SpectralDensity kSemicircle = density_library("semicircle");
SpectralDensity zero_density() {
  return density_library("table", {{"lo", -1.0}, {"hi", 1.0}, {"samples", {0.0, 0.0, 0.0}}});
}
}  // namespace

TEST_CASE("grid layout") {
  const Grid g(4.0, 1024);
  CHECK(g.spacing() == doctest::Approx(8.0 / 1024));
  CHECK(g.point(0) == -4.0);
  CHECK(g.point(512) == doctest::Approx(0.0));
  CHECK(is_power_of_two(1024));
  CHECK_FALSE(is_power_of_two(1000));
  CHECK_FALSE(is_power_of_two(0));
}

TEST_CASE("build_space rejects bad grids") {
  CHECK_THROWS_AS(build_space(kSemicircle, 4.0, 1000), InvalidArgument);
  CHECK_THROWS_AS(build_space(kSemicircle, 4.0, 32), InvalidArgument);
  CHECK_THROWS_AS(build_space(kSemicircle, 2.0, 256), InvalidArgument);  // L < 2M = 2.5
}

TEST_CASE("weights sum to the mass") {
  const auto ind = build_space(kIndicator, 4.0, 1024);
  CHECK(std::abs(ind.weights().sum() - 2.0) <= 2.0 * ind.spacing());
  const auto semi = build_space(kSemicircle, 4.0, 2048);
  CHECK(std::abs(semi.weights().sum() - 1.0) <= 1e-3);
  const auto zero = build_space(zero_density(), 4.0, 256);
  CHECK(zero.weights().cwiseAbs().maxCoeff() == 0.0);
  CHECK(zero.support_size() == 0);
}

TEST_CASE("inner products of the constant") {
  const auto ind = build_space(kIndicator, 4.0, 1024);
  const VectorRep one = constant_one(ind, SpaceTag::Weighted);
  CHECK(inner_product(one, one, ind).real() == doctest::Approx(2.0).epsilon(2.0 * ind.spacing()));
  const auto semi = build_space(kSemicircle, 4.0, 2048);
  const VectorRep g = constant_one(semi, SpaceTag::Weighted);
  CHECK(std::abs(inner_product(g, g, semi) - 1.0) <= 1e-3);
  VectorRep zero{CVector::Zero(semi.support_size()), SpaceTag::Weighted};
  CHECK(norm(zero, semi) == 0.0);
  CHECK_THROWS_AS(inner_product(g, constant_one(semi, SpaceTag::Flat), semi), TagMismatch);
}

TEST_CASE("J and its adjoint") {
  const auto semi = build_space(kSemicircle, 4.0, 1024);
  const OperatorRep jstar = adjoint_J(semi);
  CHECK(jstar.domain == SpaceTag::Weighted);
  CHECK(jstar.codomain == SpaceTag::Flat);
  CHECK(std::abs(jstar.matrix(512, semi.support_size() / 2)) == doctest::Approx(2.0 / kPi).epsilon(1e-12));

  testgen::Source src(7);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const VectorRep f{src.vector(semi.grid().ssize()), SpaceTag::Flat};
    const VectorRep h{src.vector(semi.support_size()), SpaceTag::Weighted};
    const cplx lhs = inner_product(embed_J(f, semi), h, semi);
    const cplx rhs = inner_product(f, apply(jstar, h), semi);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  CHECK(worst <= 1e-10);

  const auto zero = build_space(zero_density(), 4.0, 256);
  CHECK(adjoint_J(zero).matrix.size() == 0);
}

TEST_CASE("multiplication operators") {
  const auto ind = build_space(kIndicator, 4.0, 1024);
  const RVector& t = ind.support_points();
  const OperatorRep one = multiplication_operator(functions::constant(1.0), ind);
  CHECK((one.matrix - CMatrix::Identity(t.size(), t.size())).norm() == 0.0);
  const OperatorRep a = multiplication_operator(functions::identity(), ind);
  const OperatorRep abs = multiplication_operator(functions::absolute(), ind);
  for (Index k = 0; k < t.size(); ++k) {
    CHECK(a.matrix(k, k) == cplx(t(k)));
    if (t(k) == -0.5) CHECK(abs.matrix(k, k) == cplx(0.5));
  }
  // Flat version is zero-continued outside [-M, M].
  const OperatorRep flat = multiplication_operator(functions::constant(1.0), ind, SpaceTag::Flat);
  const Grid& g = ind.grid();
  for (Index j = 0; j < g.ssize(); ++j) {
    const double expected = std::abs(g.point(j)) <= ind.bound() ? 1.0 : 0.0;
    CHECK(flat.matrix(j, j).real() == expected);
  }
}

TEST_CASE("weighted adjoint is an adjoint (property)") {
  testgen::Source src(2024);
  for (int trial = 0; trial < 6; ++trial) {
    const SpectralDensity d = src.density();
    const auto space = build_space(d, 4.0, 256);
    const Index n = space.support_size();
    if (n == 0) continue;
    OperatorRep x{CMatrix::Zero(n, n), SpaceTag::Weighted, SpaceTag::Weighted};
    for (Index k = 0; k < n; ++k) x.matrix.col(k) = src.vector(n);
    const OperatorRep xs = adjoint(x, space);
    const VectorRep f{src.vector(n), SpaceTag::Weighted};
    const VectorRep h{src.vector(n), SpaceTag::Weighted};
    const cplx lhs = inner_product(apply(x, f), h, space);
    const cplx rhs = inner_product(f, apply(xs, h), space);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
    // Double adjoint returns the operator.
    CHECK((adjoint(xs, space).matrix - x.matrix).norm() <= 1e-10 * x.matrix.norm());
  }
}

TEST_CASE("perturbed operator is symmetric for real gamma") {
  const auto semi = build_space(kSemicircle, 4.0, 512);
  const OperatorRep ag = perturbed_operator(0.3, semi);
  CHECK((adjoint(ag, semi).matrix - ag.matrix).norm() <= 1e-12 * ag.matrix.norm());
  // B g = (g, g) g = g * mass
  const OperatorRep b = perturbation_operator(semi);
  const VectorRep g = constant_one(semi, SpaceTag::Weighted);
  const VectorRep bg = apply(b, g);
  CHECK(std::abs(bg.samples(0) - semi.weights().sum()) <= 1e-12);
}

TEST_CASE("composition checks tags") {
  const auto semi = build_space(kSemicircle, 4.0, 256);
  const OperatorRep jstar = adjoint_J(semi);
  CHECK_THROWS_AS(compose(jstar, jstar), TagMismatch);
  CHECK_NOTHROW(compose(embed_J_operator(semi), jstar));
}

TEST_CASE("smooth panel is deterministic in the seed") {
  const auto semi = build_space(kSemicircle, 4.0, 256);
  const auto a = smooth_panel(semi, 4, 99);
  const auto b = smooth_panel(semi, 4, 99);
  const auto c = smooth_panel(semi, 4, 100);
  REQUIRE(a.size() == 4);
  CHECK((a[2].samples - b[2].samples).norm() == 0.0);
  CHECK((a[2].samples - c[2].samples).norm() > 0.0);
}
