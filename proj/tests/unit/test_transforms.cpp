#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "gp/discretization.hpp"
#include "gp/transforms.hpp"

using namespace gp;

namespace {

VectorRep sample(const Grid& g, const std::function<cplx(double)>& f) {
  VectorRep v{CVector(g.ssize()), SpaceTag::Flat};
  for (Index j = 0; j < g.ssize(); ++j) v.samples(j) = f(g.point(j));
  return v;
}

// Max error over the central half of the grid, away from the periodic seam.
double central_error(const Grid& g, const CVector& got, const std::function<cplx(double)>& want) {
  double worst = 0.0;
  for (Index j = g.ssize() / 4; j < 3 * g.ssize() / 4; ++j) worst = std::max(worst, std::abs(got(j) - want(g.point(j))));
  return worst;
}

}  // namespace

TEST_CASE("multipliers split the identity") {
  const RVector p = riesz_multiplier(64);
  const RVector h = hilbert_multiplier(64);
  CHECK(p(0) == 0.5);
  CHECK(p(32) == 0.5);
  CHECK(h(0) == 0.0);
  for (Index k = 0; k < 64; ++k) {
    CHECK(h(k) == doctest::Approx(2.0 * p(k) - 1.0));  // P+ - P- with P- = 1 - P+
  }
  CHECK(p(1) == 1.0);
  CHECK(p(63) == 0.0);
}

TEST_CASE("riesz projection on Hardy elements") {
  const Grid g(400.0, 1 << 15);
  const auto plus = [](double t) { return 1.0 / cplx(t, 1.0); };
  const auto minus = [](double t) { return 1.0 / cplx(t, -1.0); };
  const VectorRep fp = riesz_projection(sample(g, plus));
  const VectorRep fm = riesz_projection(sample(g, minus));
  // Truncation of the slow 1/t tail sets the floor.
  CHECK(central_error(g, fp.samples, plus) <= 5e-3);
  CHECK(central_error(g, fm.samples, [](double) { return cplx(0.0); }) <= 5e-3);
}

TEST_CASE("riesz projection and hilbert transform of a cosine") {
  const Grid g(4.0, 512);
  const double a = kPi * 3.0 / g.half_width();  // on the frequency grid
  const VectorRep f = sample(g, [a](double t) { return cplx(std::cos(a * t)); });
  const VectorRep p = riesz_projection(f);
  const VectorRep h = hilbert_transform(f);
  double ep = 0.0, eh = 0.0;
  for (Index j = 0; j < g.ssize(); ++j) {
    ep = std::max(ep, std::abs(p.samples(j) - 0.5 * std::exp(kI * a * g.point(j))));
    eh = std::max(eh, std::abs(h.samples(j) - kI * std::sin(a * g.point(j))));
  }
  CHECK(ep <= 1e-12);
  CHECK(eh <= 1e-12);
  const VectorRep q = conjugate_projection(f);
  CHECK((p.samples + q.samples - f.samples).norm() <= 1e-12);
}

TEST_CASE("hilbert transform of the Cauchy bump") {
  const Grid g(400.0, 1 << 15);
  const VectorRep h = hilbert_transform(sample(g, [](double t) { return cplx(1.0 / (1.0 + t * t)); }));
  CHECK(central_error(g, h.samples, [](double t) { return kI * t / (1.0 + t * t); }) <= 5e-3);
}

TEST_CASE("projection algebra on random zero-mean band-limited vectors (property)") {
  testgen::Source src(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Grid g(4.0, 1024);
    VectorRep f{CVector::Zero(g.ssize()), SpaceTag::Flat};
    const int modes = src.integer(3, 60);
    for (int k = 1; k <= modes; ++k) {
      const double w = kPi * k / g.half_width();
      const cplx a = src.complex_normal(), b = src.complex_normal();
      for (Index j = 0; j < g.ssize(); ++j) f.samples(j) += a * std::cos(w * g.point(j)) + b * std::sin(w * g.point(j));
    }
    const VectorRep p = riesz_projection(f);
    CHECK((riesz_projection(p).samples - p.samples).norm() <= 1e-12 * f.samples.norm());
    const VectorRep hh = hilbert_transform(hilbert_transform(f));
    CHECK((hh.samples - f.samples).norm() <= 1e-8 * f.samples.norm());
  }
}

TEST_CASE("Cauchy projection kernel") {
  const Grid g(4.0, 256);
  const RVector t = g.points();
  const CMatrix pi = cauchy_projection_block(t, t, g.spacing());
  CHECK(pi(3, 3) == cplx(0.5));
  CHECK(std::abs(pi(3, 5) - 1.0 / (2.0 * kPi * kI * 2.0)) <= 1e-15);
  // Hermitian, and its transpose is the complement.
  CHECK((pi - pi.adjoint()).norm() <= 1e-13);
  CHECK((pi.transpose() - (CMatrix::Identity(256, 256) - pi)).norm() <= 1e-13);
  testgen::Source src(5);
  const VectorRep f{src.vector(g.ssize()), SpaceTag::Flat};
  const VectorRep fast = cauchy_projection(f);
  CHECK((fast.samples - pi * f.samples).norm() <= 1e-12 * f.samples.norm());
}

TEST_CASE("smoothed projection") {
  const Grid g(8.0, 1024);
  const double a = 1.0;
  // Compactly supported smooth test vector.
  const auto bump = [](double t) { return std::abs(t) < 3.0 ? cplx(std::pow(std::cos(kPi * t / 6.0), 4)) : cplx(0.0); };
  const VectorRep f = sample(g, bump);
  const VectorRep ref = cauchy_projection(f);
  double previous = INFINITY;
  for (double eps : {1e-1, 5e-2, 2.5e-2}) {
    const VectorRep s = smoothed_projection(f, eps, g);
    const double err = (s.samples - ref.samples).cwiseAbs().maxCoeff();
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous <= 5e-2);
  CHECK(smoothed_projection(VectorRep{CVector::Zero(g.ssize()), SpaceTag::Flat}, 1e-2, g).samples.norm() == 0.0);

  // cos(at) at eps = 1e-2 against the multiplier; error O(eps) in the middle.
  const Grid big(60.0, 4096);
  const VectorRep c = sample(big, [a](double t) { return cplx(std::cos(a * t)); });
  const VectorRep sc = smoothed_projection(c, 1e-2, big);
  double worst = 0.0;
  for (Index j = big.ssize() * 3 / 8; j < big.ssize() * 5 / 8; ++j) {
    worst = std::max(worst, std::abs(sc.samples(j) - 0.5 * std::exp(kI * a * big.point(j))));
  }
  CHECK(worst <= 5e-2);
}

TEST_CASE("Plemelj value of the semicircle at zero") {
  const auto space = build_space(density_library("semicircle"), 4.0, 2048);
  const VectorRep rho{space.density_samples().cast<cplx>(), SpaceTag::Flat};
  const CVector at0 = smoothed_projection_at(rho, 1e-4, space.grid(), RVector::Zero(1), CVector::Constant(1, 2.0 / kPi));
  CHECK(std::abs(at0(0) - 1.0 / kPi) <= 1e-3);
  const VectorRep q = cauchy_projection(rho);
  CHECK(std::abs(q.samples(1024) - 1.0 / kPi) <= 1e-3);
}
