#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "gp/kernels.hpp"

using namespace gp;
namespace k = gp::kernels;

namespace {

RVector grid_points(Index n, double lo, double hi) { return RVector::LinSpaced(n, lo, hi); }

struct ThreadScope {
  explicit ThreadScope(int n) : saved(k::thread_limit()) { k::set_thread_limit(n); }
  ~ThreadScope() { k::set_thread_limit(saved); }
  int saved;
};

double rel(const CMatrix& a, const CMatrix& b) {
  const double s = b.norm();
  return s > 0.0 ? (a - b).norm() / s : (a - b).norm();
}

}  // namespace

TEST_CASE("thread limit round trip") {
  ThreadScope scope(3);
  CHECK(k::thread_limit() == 3);
}

TEST_CASE("serial and parallel kernels agree (property)") {
  testgen::Source src(404);
  for (int threads : {1, 2, 4}) {
    ThreadScope scope(threads);
    const Index n = src.integer(50, 300);
    const RVector t = grid_points(n, -1.0, 1.0);
    const double dt = 2.0 / static_cast<double>(n - 1);
    const RVector x = grid_points(n + 7, -1.3, 1.1);

    CHECK(rel(k::parallel::cauchy_block(t, t, dt), k::serial::cauchy_block(t, t, dt)) == 0.0);

    const CVector left = src.vector(x.size());
    const CVector right = src.vector(n);
    const double eps = src.uniform(1e-3, 1e-1);
    CHECK(rel(k::parallel::regularized_kernel(x, left, t, right, eps),
              k::serial::regularized_kernel(x, left, t, right, eps)) == 0.0);

    const CVector f = src.vector(n);
    const CVector fu = src.vector(x.size());
    CHECK(rel(k::parallel::smoothed_projection(t, f, dt, x, fu, eps, -1.0, 1.0),
              k::serial::smoothed_projection(t, f, dt, x, fu, eps, -1.0, 1.0)) <= 1e-14);

    RVector w = RVector::Constant(n, dt);
    RVector v(n);
    for (Index m = 0; m < n; ++m) v(m) = std::abs(src.normal());
    CVector lambdas(20);
    RVector v0(20);
    for (Index q = 0; q < 20; ++q) {
      lambdas(q) = cplx(src.uniform(-2.0, 2.0), src.uniform(0.01, 1.0));
      v0(q) = src.uniform(0.0, 1.0);
    }
    CVector s1, s2, p1, p2;
    k::serial::cauchy_sums(t, w, v, lambdas, v0, s1, &s2);
    k::parallel::cauchy_sums(t, w, v, lambdas, v0, p1, &p2);
    CHECK(rel(p1, s1) <= 1e-14);
    CHECK(rel(p2, s2) <= 1e-14);

    CMatrix s = CMatrix::Zero(40, 40);
    s.diagonal() = grid_points(40, -1.0, 1.0).cast<cplx>();
    s += 0.1 * src.vector(40) * src.vector(40).transpose();
    CVector nodes(8);
    for (Index q = 0; q < 8; ++q) nodes(q) = 2.0 * std::exp(kI * (2.0 * kPi * q / 8.0));
    CHECK(rel(k::parallel::resolvent_traces(s, nodes), k::serial::resolvent_traces(s, nodes)) <= 1e-14);

    const RVector tt = grid_points(60, -1.0, 1.0);
    RVector u(60);
    for (Index m = 0; m < 60; ++m) u(m) = std::sqrt(2.0 / 60.0);
    CVector gammas(5);
    for (Index q = 0; q < 5; ++q) gammas(q) = src.in_disk(1.0);
    std::vector<char> ok_s, ok_p;
    const auto es = k::serial::rank_one_spectra(tt, u, gammas, ok_s);
    const auto ep = k::parallel::rank_one_spectra(tt, u, gammas, ok_p);
    REQUIRE(es.size() == ep.size());
    for (std::size_t q = 0; q < es.size(); ++q) {
      CHECK(ok_s[q] == ok_p[q]);
      CHECK(rel(ep[q], es[q]) == 0.0);
    }
  }
}

TEST_CASE("kernel values") {
  const RVector t = grid_points(5, -1.0, 1.0);
  const CMatrix c = k::cauchy_block(t, t, 0.5);
  CHECK(c(0, 0) == cplx(0.5));
  CHECK(std::abs(c(0, 1) - 0.5 / (2.0 * kPi * kI * 0.5)) <= 1e-15);
  // Regularized kernel at the diagonal: 1/(i eps).
  const CMatrix z = k::regularized_kernel(RVector::Zero(1), CVector::Ones(1), RVector::Zero(1), CVector::Ones(1), 0.1);
  CHECK(std::abs(z(0, 0) - 1.0 / cplx(0.0, 0.1)) <= 1e-14);
  // Resolvent trace of diag(1, 2) at 0.
  CMatrix d = CMatrix::Zero(2, 2);
  d.diagonal() << 1.0, 2.0;
  const CVector tr = k::resolvent_traces(d, CVector::Zero(1));
  CHECK(std::abs(tr(0) - cplx(1.5)) <= 1e-14);
}
