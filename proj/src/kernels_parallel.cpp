#include <atomic>

#include <omp.h>

#include "gp/kernels.hpp"
#include "kernel_terms.hpp"

namespace gp::kernels {

namespace {
std::atomic<int> g_thread_limit{0};

int threads() {
  const int limit = g_thread_limit.load();
  return limit > 0 ? limit : omp_get_max_threads();
}
}  // namespace

void set_thread_limit(int threads) { g_thread_limit.store(threads > 0 ? threads : 0); }
int thread_limit() { return threads(); }

namespace parallel {

CMatrix cauchy_block(const RVector& rows, const RVector& cols, double dt) {
  CMatrix out(rows.size(), cols.size());
  const Index nc = cols.size();
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index k = 0; k < nc; ++k) {
    for (Index j = 0; j < rows.size(); ++j) out(j, k) = detail::cauchy_entry(rows(j), cols(k), dt);
  }
  return out;
}

CMatrix regularized_kernel(const RVector& x, const CVector& left, const RVector& t, const CVector& right,
                           double eps) {
  CMatrix out(x.size(), t.size());
  const Index nc = t.size();
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index k = 0; k < nc; ++k) {
    for (Index j = 0; j < x.size(); ++j) out(j, k) = left(j) * right(k) / (cplx(x(j), eps) - t(k));
  }
  return out;
}

CVector smoothed_projection(const RVector& t, const CVector& f, double dt, const RVector& u,
                            const CVector& f_at_u, double eps, double lo, double hi) {
  CVector out(u.size());
  const Index nq = u.size();
#pragma omp parallel for schedule(static) num_threads(threads())
  for (Index q = 0; q < nq; ++q) out(q) = detail::smoothed_at(t, f, dt, u(q), f_at_u(q), eps, lo, hi);
  return out;
}

void cauchy_sums(const RVector& t, const RVector& w, const RVector& v, const CVector& lambdas,
                 const RVector& v0, CVector& first, CVector* second) {
  first.resize(lambdas.size());
  if (second) second->resize(lambdas.size());
  const Index nq = lambdas.size();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads())
  for (Index q = 0; q < nq; ++q) {
    detail::cauchy_sum_at(t, w, v, lambdas(q), v0(q), first(q), second ? &(*second)(q) : nullptr);
  }
}

CVector resolvent_traces(const CMatrix& s, const CVector& nodes) {
  CVector out(nodes.size());
  const Index nq = nodes.size();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads())
  for (Index q = 0; q < nq; ++q) out(q) = detail::resolvent_trace(s, nodes(q));
  return out;
}

std::vector<CVector> rank_one_spectra(const RVector& t, const RVector& u, const CVector& gammas,
                                      std::vector<char>& ok) {
  std::vector<CVector> out(static_cast<std::size_t>(gammas.size()));
  ok.assign(out.size(), 1);
  const Index nq = gammas.size();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads())
  for (Index q = 0; q < nq; ++q) {
    bool good = true;
    out[static_cast<std::size_t>(q)] = detail::rank_one_spectrum(t, u, gammas(q), good);
    ok[static_cast<std::size_t>(q)] = good ? 1 : 0;
  }
  return out;
}

}  // namespace parallel
}  // namespace gp::kernels
