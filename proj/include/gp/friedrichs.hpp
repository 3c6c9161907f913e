#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "gp/discretization.hpp"
#include "gp/scalar_function.hpp"
#include "gp/types.hpp"

namespace gp {

// R f = (f, right)_rho * left, both factors on the support subgrid.
struct RankOneOperator {
  VectorRep left;
  VectorRep right;
};

RankOneOperator rank_one(const CVector& left, const CVector& right);
RankOneOperator zero_rank_one(const WeightedSpace& space);
// (., g) g
RankOneOperator perturbation_rank_one(const WeightedSpace& space);
OperatorRep materialize(const RankOneOperator& r, const WeightedSpace& space);

// Solution of (A + i eps) Z - Z A = R: kernel left(x) conj(right(t)) rho(t) dt / (x + i eps - t).
OperatorRep gamma_eps_rank_one(const RankOneOperator& r, double eps, const WeightedSpace& space);
// -2 pi i J M_left P+ M_{conj(right) rho}, P+ the grid Cauchy projection.
OperatorRep gamma_rank_one(const RankOneOperator& r, const WeightedSpace& space);
// Same operator applied to one vector through the FFT path.
VectorRep apply_gamma_rank_one(const RankOneOperator& r, const VectorRep& f, const WeightedSpace& space);

struct PsiMultiplier {
  cplx gamma;
  CVector samples;     // psi on the support subgrid
  CVector projection;  // P+ rho on the support subgrid
  double sup_projection = 0.0;  // sup over the grid of |P+ rho|
  double delta_hat = 0.0;       // 1 / (4 pi sup_projection)
};

// P+ rho on the whole grid.
CVector projected_density(const WeightedSpace& space);
double certified_radius(const WeightedSpace& space);

PsiMultiplier psi_gamma(cplx gamma, const WeightedSpace& space);
// R+ = gamma (., g) psi_gamma g,  R- = gamma (., psi_{conj gamma}) g.
std::pair<RankOneOperator, RankOneOperator> solve_R_pm(cplx gamma, const WeightedSpace& space);
// || R+ - gamma (I + Gamma R+) B || / || R+ ||  (and the R- counterpart).
std::pair<double, double> fixed_point_residuals(cplx gamma, const WeightedSpace& space);

struct WaveResiduals {
  double inverse_right = 0.0;  // ||U+ U- - I||
  double inverse_left = 0.0;   // ||U- U+ - I||
  std::optional<double> unitarity;       // ||(U+)* U+ - I||, real gamma only
  std::optional<double> adjoint_defect;  // ||(U+)* - U-||, real gamma only
  double intertwining = 0.0;   // ||A U+ - U+ A_gamma||
  double gamma_norm = 0.0;     // ||Gamma R+||
  // Same defects measured on the smooth panel (max ||X f|| / ||f||).
  double inverse_right_strong = 0.0;
  double inverse_left_strong = 0.0;
  std::optional<double> unitarity_strong;
  double intertwining_strong = 0.0;
};

struct WaveOperatorPair {
  cplx gamma;
  OperatorRep plus;
  OperatorRep minus;
  PsiMultiplier psi;
  WaveResiduals residuals;
};

WaveOperatorPair wave_operators(cplx gamma, const WeightedSpace& space, std::uint64_t panel_seed = 20240901);

struct ProductIdentityResidual {
  double finite_eps = 0.0;    // ||G_e R1 G_e R2 - G_2e(G_e R1 R2 + R1 G_e R2)||
  double limit = 0.0;         // same with Gamma, operator norm
  double limit_strong = 0.0;  // same with Gamma, on the smooth panel
};

ProductIdentityResidual product_identity_residual(const RankOneOperator& r_plus, const RankOneOperator& r_minus,
                                                  double eps, const WeightedSpace& space,
                                                  std::uint64_t panel_seed = 20240901);

// U- M_phi0 U+
OperatorRep functional_calculus(const ScalarFunction& phi, cplx gamma, const WeightedSpace& space);

enum class DiagonalRule {
  // Diagonal w_j * centred difference of phi0: the bounded kernel
  // (phi(s) - phi(u)) / (s - u) extended to s = u.
  Completed,
  // Literal grid commutator, zero diagonal.
  Commutator,
};

// pi i M_g [H, M_phi0] M_{conj(g) rho} with H = 2 P+ - I.
OperatorRep derivative_at_zero(const ScalarFunction& phi, const WeightedSpace& space,
                               DiagonalRule rule = DiagonalRule::Completed);

double strong_norm(const OperatorRep& x, const std::vector<VectorRep>& panel, const WeightedSpace& space);

}  // namespace gp
