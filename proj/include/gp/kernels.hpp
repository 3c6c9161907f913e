#pragma once

#include <vector>

#include "gp/types.hpp"

// Data-parallel inner loops. `serial` is the reference implementation and
// `parallel` the OpenMP one with the same contract; the names in
// gp::kernels itself forward to `parallel`.
namespace gp::kernels {

namespace serial {

// Plemelj/Cauchy matrix: 1/2 where rows(j) == cols(k), otherwise
// dt / (2*pi*i * (cols(k) - rows(j))).
CMatrix cauchy_block(const RVector& rows, const RVector& cols, double dt);

// Z_jk = left_j * right_k / (x_j + i*eps - t_k).
CMatrix regularized_kernel(const RVector& x, const CVector& left, const RVector& t,
                           const CVector& right, double eps);

// (1/2 pi i) [ sum_k (f_k - f(u)) dt / (t_k - u - i eps) + f(u) log((hi - z)/(lo - z)) ],
// z = u + i eps.
CVector smoothed_projection(const RVector& t, const CVector& f, double dt, const RVector& u,
                            const CVector& f_at_u, double eps, double lo, double hi);

// first_q = sum_m w_m (v_m - v0_q) / (t_m - lambda_q);
// second_q (optional) = sum_m w_m (v_m - v0_q) / (t_m - lambda_q)^2.
void cauchy_sums(const RVector& t, const RVector& w, const RVector& v, const CVector& lambdas,
                 const RVector& v0, CVector& first, CVector* second);

// tr (S - z_q)^{-1} by dense LU.
CVector resolvent_traces(const CMatrix& s, const CVector& nodes);

// Eigenvalues of diag(t) + gamma_q u u^T; ok[q] = 0 on solver failure.
std::vector<CVector> rank_one_spectra(const RVector& t, const RVector& u, const CVector& gammas,
                                      std::vector<char>& ok);

}  // namespace serial

namespace parallel {

// Plemelj/Cauchy matrix: 1/2 where rows(j) == cols(k), otherwise
// dt / (2*pi*i * (cols(k) - rows(j))).
CMatrix cauchy_block(const RVector& rows, const RVector& cols, double dt);

// Z_jk = left_j * right_k / (x_j + i*eps - t_k).
CMatrix regularized_kernel(const RVector& x, const CVector& left, const RVector& t,
                           const CVector& right, double eps);

// (1/2 pi i) [ sum_k (f_k - f(u)) dt / (t_k - u - i eps) + f(u) log((hi - z)/(lo - z)) ],
// z = u + i eps.
CVector smoothed_projection(const RVector& t, const CVector& f, double dt, const RVector& u,
                            const CVector& f_at_u, double eps, double lo, double hi);

// first_q = sum_m w_m (v_m - v0_q) / (t_m - lambda_q);
// second_q (optional) = sum_m w_m (v_m - v0_q) / (t_m - lambda_q)^2.
void cauchy_sums(const RVector& t, const RVector& w, const RVector& v, const CVector& lambdas,
                 const RVector& v0, CVector& first, CVector* second);

// tr (S - z_q)^{-1} by dense LU.
CVector resolvent_traces(const CMatrix& s, const CVector& nodes);

// Eigenvalues of diag(t) + gamma_q u u^T; ok[q] = 0 on solver failure.
std::vector<CVector> rank_one_spectra(const RVector& t, const RVector& u, const CVector& gammas,
                                      std::vector<char>& ok);

}  // namespace parallel

using parallel::cauchy_block;
using parallel::cauchy_sums;
using parallel::rank_one_spectra;
using parallel::regularized_kernel;
using parallel::resolvent_traces;
using parallel::smoothed_projection;

// Caps OpenMP threads used by the parallel kernels; <= 0 restores the default.
void set_thread_limit(int threads);
int thread_limit();

}  // namespace gp::kernels
