#include "gp/kernels.hpp"
#include "kernel_terms.hpp"

namespace gp::kernels::serial {

CMatrix cauchy_block(const RVector& rows, const RVector& cols, double dt) {
  CMatrix out(rows.size(), cols.size());
  for (Index k = 0; k < cols.size(); ++k) {
    for (Index j = 0; j < rows.size(); ++j) out(j, k) = detail::cauchy_entry(rows(j), cols(k), dt);
  }
  return out;
}

CMatrix regularized_kernel(const RVector& x, const CVector& left, const RVector& t, const CVector& right,
                           double eps) {
  CMatrix out(x.size(), t.size());
  for (Index k = 0; k < t.size(); ++k) {
    for (Index j = 0; j < x.size(); ++j) out(j, k) = left(j) * right(k) / (cplx(x(j), eps) - t(k));
  }
  return out;
}

CVector smoothed_projection(const RVector& t, const CVector& f, double dt, const RVector& u,
                            const CVector& f_at_u, double eps, double lo, double hi) {
  CVector out(u.size());
  for (Index q = 0; q < u.size(); ++q) out(q) = detail::smoothed_at(t, f, dt, u(q), f_at_u(q), eps, lo, hi);
  return out;
}

void cauchy_sums(const RVector& t, const RVector& w, const RVector& v, const CVector& lambdas,
                 const RVector& v0, CVector& first, CVector* second) {
  first.resize(lambdas.size());
  if (second) second->resize(lambdas.size());
  for (Index q = 0; q < lambdas.size(); ++q) {
    detail::cauchy_sum_at(t, w, v, lambdas(q), v0(q), first(q), second ? &(*second)(q) : nullptr);
  }
}

CVector resolvent_traces(const CMatrix& s, const CVector& nodes) {
  CVector out(nodes.size());
  for (Index q = 0; q < nodes.size(); ++q) out(q) = detail::resolvent_trace(s, nodes(q));
  return out;
}

std::vector<CVector> rank_one_spectra(const RVector& t, const RVector& u, const CVector& gammas,
                                      std::vector<char>& ok) {
  std::vector<CVector> out(static_cast<std::size_t>(gammas.size()));
  ok.assign(out.size(), 1);
  for (Index q = 0; q < gammas.size(); ++q) {
    bool good = true;
    out[static_cast<std::size_t>(q)] = detail::rank_one_spectrum(t, u, gammas(q), good);
    ok[static_cast<std::size_t>(q)] = good ? 1 : 0;
  }
  return out;
}

}  // namespace gp::kernels::serial
