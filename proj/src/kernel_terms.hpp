#pragma once

// Per-entry arithmetic shared by the serial and OpenMP kernels.

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gp/types.hpp"

namespace gp::kernels::detail {

inline cplx cauchy_entry(double row_t, double col_t, double dt) {
  if (row_t == col_t) return 0.5;
  return dt / (2.0 * kPi * kI * (col_t - row_t));
}

inline cplx smoothed_at(const RVector& t, const CVector& f, double dt, double u, cplx fu, double eps,
                        double lo, double hi) {
  const cplx z(u, eps);
  cplx acc = 0.0;
  for (Index k = 0; k < t.size(); ++k) acc += (f(k) - fu) / (t(k) - z);
  acc *= dt;
  acc += fu * std::log((hi - z) / (lo - z));
  return acc / (2.0 * kPi * kI);
}

inline void cauchy_sum_at(const RVector& t, const RVector& w, const RVector& v, cplx lambda, double v0,
                          cplx& first, cplx* second) {
  cplx a = 0.0;
  cplx b = 0.0;
  for (Index m = 0; m < t.size(); ++m) {
    const cplx inv = 1.0 / (t(m) - lambda);
    a += w(m) * (v(m) - v0) * inv;
    if (second) b += w(m) * (v(m) - v0) * inv * inv;
  }
  first = a;
  if (second) *second = b;
}

inline cplx resolvent_trace(const CMatrix& s, cplx z) {
  const Index n = s.rows();
  CMatrix shifted = s;
  shifted.diagonal().array() -= z;
  Eigen::PartialPivLU<CMatrix> lu(shifted);
  const CMatrix inv = lu.solve(CMatrix::Identity(n, n));
  return inv.trace();
}

inline CVector rank_one_spectrum(const RVector& t, const RVector& u, cplx gamma, bool& ok) {
  const Index n = t.size();
  ok = true;
  if (n == 0) return CVector(0);
  if (gamma.imag() == 0.0) {
    RMatrix m = gamma.real() * (u * u.transpose());
    m.diagonal() += t;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      ok = false;
      return CVector::Zero(n);
    }
    return es.eigenvalues().cast<cplx>();
  }
  CMatrix m = gamma * (u * u.transpose()).cast<cplx>();
  m.diagonal() += t.cast<cplx>();
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  if (es.info() != Eigen::Success) {
    ok = false;
    return CVector::Zero(n);
  }
  return es.eigenvalues();
}

}  // namespace gp::kernels::detail
