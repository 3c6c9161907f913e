#include "gp/friedrichs.hpp"

#include <cmath>
#include <limits>

#include "gp/kernels.hpp"
#include "gp/linalg.hpp"
#include "gp/transforms.hpp"

namespace gp {

namespace {

constexpr double kSingularFloor = 1e-8;

void check_factor(const VectorRep& v, const WeightedSpace& space, const char* which) {
  if (v.tag != SpaceTag::Weighted || v.samples.size() != space.support_size()) {
    throw TagMismatch(std::string("rank-one ") + which + " factor must be a WEIGHTED support vector");
  }
}

void check_rank_one(const RankOneOperator& r, const WeightedSpace& space) {
  check_factor(r.left, space, "left");
  check_factor(r.right, space, "right");
}

void check_radius(cplx gamma, const WeightedSpace& space) {
  const double radius = certified_radius(space);
  if (!(std::abs(gamma) < radius)) {
    throw SingularCoupling("|gamma| = " + std::to_string(std::abs(gamma)) +
                           " is outside the certified radius " + std::to_string(radius));
  }
}

OperatorRep weighted(CMatrix m) { return {std::move(m), SpaceTag::Weighted, SpaceTag::Weighted}; }

CMatrix cauchy_support_block(const WeightedSpace& space) {
  return cauchy_projection_block(space.support_points(), space.support_points(), space.spacing());
}

}  // namespace

RankOneOperator rank_one(const CVector& left, const CVector& right) {
  return {{left, SpaceTag::Weighted}, {right, SpaceTag::Weighted}};
}

RankOneOperator zero_rank_one(const WeightedSpace& space) {
  const CVector z = CVector::Zero(space.support_size());
  return rank_one(z, z);
}

RankOneOperator perturbation_rank_one(const WeightedSpace& space) {
  const CVector one = CVector::Ones(space.support_size());
  return rank_one(one, one);
}

OperatorRep materialize(const RankOneOperator& r, const WeightedSpace& space) {
  check_rank_one(r, space);
  const CVector row = r.right.samples.conjugate().cwiseProduct(space.support_weights().cast<cplx>());
  return weighted(r.left.samples * row.transpose());
}

OperatorRep gamma_eps_rank_one(const RankOneOperator& r, double eps, const WeightedSpace& space) {
  if (!(eps > 0.0)) throw InvalidArgument("gamma_eps_rank_one needs eps > 0");
  check_rank_one(r, space);
  const CVector right = r.right.samples.conjugate().cwiseProduct(space.support_weights().cast<cplx>());
  return weighted(kernels::regularized_kernel(space.support_points(), r.left.samples, space.support_points(),
                                              right, eps));
}

OperatorRep gamma_rank_one(const RankOneOperator& r, const WeightedSpace& space) {
  check_rank_one(r, space);
  // J and J* only select the support rows/columns of the flat Cauchy projection.
  const CVector right = r.right.samples.conjugate().cwiseProduct(space.support_density().cast<cplx>());
  CMatrix m = cauchy_support_block(space);
  m = r.left.samples.asDiagonal() * m * right.asDiagonal();
  m *= -2.0 * kPi * kI;
  return weighted(std::move(m));
}

VectorRep apply_gamma_rank_one(const RankOneOperator& r, const VectorRep& f, const WeightedSpace& space) {
  check_rank_one(r, space);
  check_factor(f, space, "argument");
  VectorRep h{r.right.samples.conjugate().cwiseProduct(space.support_density().cast<cplx>()).cwiseProduct(f.samples),
              SpaceTag::Weighted};
  const VectorRep projected = embed_J(cauchy_projection(extend_by_zero(h, space)), space);
  return {-2.0 * kPi * kI * r.left.samples.cwiseProduct(projected.samples), SpaceTag::Weighted};
}

CVector projected_density(const WeightedSpace& space) {
  return cauchy_projection({space.density_samples().cast<cplx>(), SpaceTag::Flat}).samples;
}

double certified_radius(const WeightedSpace& space) {
  const double sup = projected_density(space).cwiseAbs().maxCoeff();
  return sup > 0.0 ? 1.0 / (4.0 * kPi * sup) : std::numeric_limits<double>::infinity();
}

PsiMultiplier psi_gamma(cplx gamma, const WeightedSpace& space) {
  const CVector full = projected_density(space);
  PsiMultiplier psi;
  psi.gamma = gamma;
  psi.sup_projection = full.size() ? full.cwiseAbs().maxCoeff() : 0.0;
  psi.delta_hat = psi.sup_projection > 0.0 ? 1.0 / (4.0 * kPi * psi.sup_projection)
                                           : std::numeric_limits<double>::infinity();
  const Index ns = space.support_size();
  psi.projection.resize(ns);
  psi.samples.resize(ns);
  const cplx c = 2.0 * kPi * kI * gamma;
  for (Index s = 0; s < ns; ++s) {
    const cplx q = full(space.support_indices()[static_cast<std::size_t>(s)]);
    const cplx denom = 1.0 + c * q;
    if (std::abs(denom) < kSingularFloor) {
      throw SingularCoupling("1 + 2 pi i gamma P+rho vanishes at t = " + std::to_string(space.support_points()(s)));
    }
    psi.projection(s) = q;
    psi.samples(s) = 1.0 / denom;
  }
  return psi;
}

std::pair<RankOneOperator, RankOneOperator> solve_R_pm(cplx gamma, const WeightedSpace& space) {
  check_radius(gamma, space);
  const PsiMultiplier psi = psi_gamma(gamma, space);
  const PsiMultiplier psi_bar = psi_gamma(std::conj(gamma), space);
  const CVector one = CVector::Ones(space.support_size());
  return {rank_one(gamma * psi.samples, one), rank_one(gamma * one, psi_bar.samples)};
}

std::pair<double, double> fixed_point_residuals(cplx gamma, const WeightedSpace& space) {
  const auto [rp, rm] = solve_R_pm(gamma, space);
  const OperatorRep b = perturbation_operator(space);
  const OperatorRep p = materialize(rp, space);
  const OperatorRep m = materialize(rm, space);
  const OperatorRep gp = gamma_rank_one(rp, space);
  const OperatorRep gm = gamma_rank_one(rm, space);
  const Index n = space.support_size();
  const CMatrix eye = CMatrix::Identity(n, n);
  const CMatrix res_p = p.matrix - gamma * (eye + gp.matrix) * b.matrix;
  const CMatrix res_m = m.matrix - gamma * b.matrix * (eye - gm.matrix);
  auto rel = [&](const CMatrix& res, const OperatorRep& ref) {
    const double num = operator_norm(weighted(res), space);
    const double den = operator_norm(ref, space);
    return den > 0.0 ? num / den : num;
  };
  return {rel(res_p, p), rel(res_m, m)};
}

double strong_norm(const OperatorRep& x, const std::vector<VectorRep>& panel, const WeightedSpace& space) {
  double worst = 0.0;
  for (const auto& f : panel) {
    const double nf = norm(f, space);
    if (nf == 0.0) continue;
    worst = std::max(worst, norm(apply(x, f), space) / nf);
  }
  return worst;
}

WaveOperatorPair wave_operators(cplx gamma, const WeightedSpace& space, std::uint64_t panel_seed) {
  const auto [rp, rm] = solve_R_pm(gamma, space);
  WaveOperatorPair w;
  w.gamma = gamma;
  w.psi = psi_gamma(gamma, space);
  const OperatorRep id = identity_operator(space);
  const OperatorRep gp = gamma_rank_one(rp, space);
  w.plus = add(id, gp);
  w.minus = add(id, gamma_rank_one(rm, space), -1.0);

  const OperatorRep a = perturbed_operator(0.0, space);
  const OperatorRep ag = perturbed_operator(gamma, space);
  const OperatorRep right = add(compose(w.plus, w.minus), id, -1.0);
  const OperatorRep left = add(compose(w.minus, w.plus), id, -1.0);
  const OperatorRep inter = add(compose(a, w.plus), compose(w.plus, ag), -1.0);
  const auto panel = smooth_panel(space, 10, panel_seed);

  WaveResiduals& r = w.residuals;
  r.inverse_right = operator_norm(right, space);
  r.inverse_left = operator_norm(left, space);
  r.intertwining = operator_norm(inter, space);
  r.gamma_norm = operator_norm(gp, space);
  r.inverse_right_strong = strong_norm(right, panel, space);
  r.inverse_left_strong = strong_norm(left, panel, space);
  r.intertwining_strong = strong_norm(inter, panel, space);
  if (gamma.imag() == 0.0) {
    const OperatorRep plus_adj = adjoint(w.plus, space);
    const OperatorRep unit = add(compose(plus_adj, w.plus), id, -1.0);
    r.unitarity = operator_norm(unit, space);
    r.unitarity_strong = strong_norm(unit, panel, space);
    r.adjoint_defect = operator_norm(add(plus_adj, w.minus, -1.0), space);
  }
  return w;
}

ProductIdentityResidual product_identity_residual(const RankOneOperator& r_plus, const RankOneOperator& r_minus,
                                                  double eps, const WeightedSpace& space, std::uint64_t panel_seed) {
  if (!(eps > 0.0)) throw InvalidArgument("product_identity_residual needs eps > 0");
  check_rank_one(r_plus, space);
  check_rank_one(r_minus, space);

  // G1 G2 - Gx(G1 R2 + R1 G2), where G1 R2 and R1 G2 are again rank one.
  auto defect = [&](const OperatorRep& g1, const OperatorRep& g2, auto&& transform) {
    const RankOneOperator first{apply(g1, r_minus.left), r_minus.right};
    const RankOneOperator second{r_plus.left, apply(adjoint(g2, space), r_plus.right)};
    const OperatorRep rhs = add(transform(first), transform(second));
    return add(compose(g1, g2), rhs, -1.0);
  };

  ProductIdentityResidual out;
  const OperatorRep e1 = gamma_eps_rank_one(r_plus, eps, space);
  const OperatorRep e2 = gamma_eps_rank_one(r_minus, eps, space);
  out.finite_eps = operator_norm(
      defect(e1, e2, [&](const RankOneOperator& r) { return gamma_eps_rank_one(r, 2.0 * eps, space); }), space);

  const OperatorRep l1 = gamma_rank_one(r_plus, space);
  const OperatorRep l2 = gamma_rank_one(r_minus, space);
  const OperatorRep lim = defect(l1, l2, [&](const RankOneOperator& r) { return gamma_rank_one(r, space); });
  out.limit = operator_norm(lim, space);
  out.limit_strong = strong_norm(lim, smooth_panel(space, 10, panel_seed), space);
  return out;
}

OperatorRep functional_calculus(const ScalarFunction& phi, cplx gamma, const WeightedSpace& space) {
  const auto [rp, rm] = solve_R_pm(gamma, space);
  const OperatorRep id = identity_operator(space);
  const OperatorRep plus = add(id, gamma_rank_one(rp, space));
  const OperatorRep minus = add(id, gamma_rank_one(rm, space), -1.0);
  return compose(minus, compose(multiplication_operator(phi, space), plus));
}

OperatorRep derivative_at_zero(const ScalarFunction& phi, const WeightedSpace& space, DiagonalRule rule) {
  const Index ns = space.support_size();
  const CMatrix pi_block = cauchy_support_block(space);
  const CVector phi0 = multiplication_operator(phi, space).matrix.diagonal();
  // [H, M] = 2 [P+, M] on supported vectors.
  CMatrix comm = 2.0 * (pi_block * phi0.asDiagonal() - phi0.asDiagonal() * pi_block);
  CMatrix d = kPi * kI * comm * space.support_density().cast<cplx>().asDiagonal();
  if (rule == DiagonalRule::Completed) {
    const double dt = space.spacing();
    const double m = space.bound();
    auto phi_at = [&](double t) { return (t >= -m && t <= m) ? phi(t) : cplx(0.0); };
    for (Index s = 0; s < ns; ++s) {
      const double t = space.support_points()(s);
      d(s, s) = space.support_weights()(s) * (phi_at(t + dt) - phi_at(t - dt)) / (2.0 * dt);
    }
  }
  return weighted(std::move(d));
}

}  // namespace gp
