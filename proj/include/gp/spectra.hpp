#pragma once

#include <string>
#include <vector>

#include "gp/density.hpp"
#include "gp/discretization.hpp"
#include "gp/friedrichs.hpp"
#include "gp/scalar_function.hpp"
#include "gp/transforms.hpp"
#include "gp/types.hpp"

namespace gp {

// ---- dense oracle -------------------------------------------------------

struct OracleResult {
  OperatorRep value;
  double condition = 1.0;  // eigenvector condition number (1 on the Hermitian path)
  bool flagged = false;    // ill-conditioned and no matrix fallback available
  std::string method;      // "hermitian-eig", "general-eig", "matrix-function"
};

inline constexpr double kConditionGuard = 1e8;

// phi(A_gamma) by eigendecomposition of D^{1/2} A_gamma D^{-1/2}.
OracleResult oracle_calculus(const ScalarFunction& phi, cplx gamma, const WeightedSpace& space);

// (phi(A_gamma) - phi(A)) / gamma from the oracle.
OperatorRep difference_quotient(const ScalarFunction& phi, cplx gamma, const WeightedSpace& space);

// ---- secular equation 1 + gamma B(lambda) = 0 ---------------------------

struct Region {
  double re_min = -3.0;
  double re_max = 3.0;
  double im_min = 0.0;
  double im_max = 0.0;
  int mesh = 16;
  // Seeds and roots closer than this to the support are discarded.
  double support_margin = 1e-3;
};

struct SecularRoot {
  cplx lambda;
  double residual = 0.0;
  int iterations = 0;
};

struct SecularResult {
  std::vector<SecularRoot> roots;
  int seeds = 0;
  int failed_seeds = 0;
};

SecularResult secular_roots(cplx gamma, const SpectralDensity& density, const Region& region);

// ---- spectrum map -------------------------------------------------------

enum class SpectrumClass { Isospectral, Emergent, Failed };
const char* to_string(SpectrumClass c);

struct SpectrumEntry {
  cplx gamma;
  CVector eigenvalues;
  RVector distances;  // to the support interval
  double max_distance = 0.0;
  SpectrumClass classification = SpectrumClass::Isospectral;
};

struct SpectrumMap {
  double support_lo = 0.0;
  double support_hi = 0.0;
  double tol = 0.0;
  double broadening = 0.0;  // 3 dt
  std::vector<SpectrumEntry> entries;
};

SpectrumMap spectrum_map(const std::vector<cplx>& gammas, const WeightedSpace& space, double tol);

double distance_to_interval(cplx z, double lo, double hi);

// ---- contour counting ---------------------------------------------------

struct ContourCount {
  int count = 0;
  cplx raw;
  double rounding_gap = 0.0;
  double refinement_change = 0.0;  // |T(M) - T(M/2)|
  int nodes = 0;
};

ContourCount count_eigenvalues_contour(cplx gamma, cplx center, double radius, const WeightedSpace& space,
                                       int nodes = 64);

// ---- witnesses ----------------------------------------------------------

enum class WitnessCase { ImaginaryPart, RealAxis };
enum class WitnessStatus { Pending, Verified, Failed, ScaleLimit };
const char* to_string(WitnessCase c);
const char* to_string(WitnessStatus s);

struct WitnessRecord {
  int n = 0;
  cplx lambda;       // target point approaching the divergence locus
  cplx borel;        // B(lambda)
  cplx gamma;        // -1 / B(lambda)
  cplx eigenvalue;   // nearest eigenvalue of the discretized A_gamma
  double eigen_offset = 0.0;
  double eigen_residual = 0.0;
  bool eigen_verified = false;
  WitnessCase witness_case = WitnessCase::ImaginaryPart;
  double tau = 0.0;
  double bound = 0.0;           // (1 - e^{-1}) / |gamma|
  double measured_norm = 0.0;   // ||Sigma(phi_n, gamma_n)||
  double sup_on_spectrum = 0.0; // max |phi_n| over sigma(A)
  cplx phi_at_eigenvalue;
  double condition = 1.0;
  std::string method;
  WitnessStatus status = WitnessStatus::Pending;
};

struct WitnessChain {
  bool found = false;  // false: NO_WITNESS
  double locus = 0.0;
  std::vector<WitnessRecord> records;
};

WitnessChain cli_failure_witness(const WeightedSpace& space, int n_max);
WitnessRecord divergence_witness(const WitnessRecord& record, const WeightedSpace& space,
                                 double tolerance = 0.05);

// ---- holomorphy ---------------------------------------------------------

struct HolomorphyReport {
  double radius = 0.0;
  int nodes = 0;
  double delta_hat = 0.0;
  std::vector<cplx> probes;
  std::vector<double> residuals;  // max entrywise |Cauchy - direct| per probe
  double max_residual = 0.0;
  CMatrix derivative;             // Phi'(0) from the circle
  double derivative_residual = 0.0;  // vs derivative_at_zero (commutator rule), max entrywise
};

HolomorphyReport holomorphy_probe(const ScalarFunction& phi, const WeightedSpace& space, double radius,
                                  int nodes, const std::vector<cplx>& probes);

}  // namespace gp
