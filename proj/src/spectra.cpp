#include "gp/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "gp/kernels.hpp"
#include "gp/linalg.hpp"

namespace gp {

namespace {

OperatorRep weighted(CMatrix m) { return {std::move(m), SpaceTag::Weighted, SpaceTag::Weighted}; }

// D^{1/2} A_gamma D^{-1/2} = diag(t) + gamma s s^T, s = sqrt(w).
CMatrix symmetric_perturbed(cplx gamma, const WeightedSpace& space) {
  const RVector s = space.support_weights().cwiseSqrt();
  CMatrix m = gamma * (s * s.transpose()).cast<cplx>();
  m.diagonal() += space.support_points().cast<cplx>();
  return m;
}

CMatrix unsymmetrize(const CMatrix& m, const WeightedSpace& space) {
  const RVector s = space.support_weights().cwiseSqrt();
  return s.cwiseInverse().asDiagonal() * m * s.asDiagonal();
}

struct MatrixFunction {
  CMatrix value;
  double condition = 1.0;
  bool flagged = false;
  std::string method;
};

// phi of a (symmetrized) matrix. Real gamma: Hermitian path with phi0.
MatrixFunction apply_function(const ScalarFunction& phi, const CMatrix& s, bool hermitian, double bound) {
  MatrixFunction out;
  const Index n = s.rows();
  if (n == 0) {
    out.value = CMatrix(0, 0);
    out.method = hermitian ? "hermitian-eig" : "general-eig";
    return out;
  }
  if (hermitian) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(s.real());
    if (es.info() != Eigen::Success) throw NumericalGuard("Hermitian eigensolver failed");
    CVector f(n);
    for (Index k = 0; k < n; ++k) {
      const double lam = es.eigenvalues()(k);
      f(k) = (lam >= -bound && lam <= bound) ? phi(lam) : cplx(0.0);
    }
    const CMatrix v = es.eigenvectors().cast<cplx>();
    out.value = v * f.asDiagonal() * v.adjoint();
    out.method = "hermitian-eig";
    return out;
  }
  Eigen::ComplexEigenSolver<CMatrix> es(s);
  bool ok = es.info() == Eigen::Success;
  if (ok) {
    const CMatrix& v = es.eigenvectors();
    out.condition = condition_number(v);
    if (out.condition <= kConditionGuard) {
      CVector f(n);
      for (Index k = 0; k < n; ++k) f(k) = phi(es.eigenvalues()(k));
      out.value = v * f.asDiagonal() * v.partialPivLu().inverse();
      out.method = "general-eig";
      return out;
    }
  }
  if (phi.matrix_eval) {
    out.value = phi.matrix_eval(s);
    out.method = "matrix-function";
    return out;
  }
  out.flagged = true;
  out.method = "general-eig";
  if (ok) {
    const CMatrix& v = es.eigenvectors();
    CVector f(n);
    for (Index k = 0; k < n; ++k) f(k) = phi(es.eigenvalues()(k));
    out.value = v * f.asDiagonal() * v.partialPivLu().inverse();
  } else {
    out.value = CMatrix::Constant(n, n, cplx(std::nan(""), 0.0));
  }
  return out;
}

}  // namespace

double distance_to_interval(cplx z, double lo, double hi) {
  const double x = std::clamp(z.real(), lo, hi);
  return std::abs(z - cplx(x, 0.0));
}

OracleResult oracle_calculus(const ScalarFunction& phi, cplx gamma, const WeightedSpace& space) {
  // Complex gamma evaluates phi itself on the eigenvalues (holomorphic continuation).
  const MatrixFunction mf =
      apply_function(phi, symmetric_perturbed(gamma, space), gamma.imag() == 0.0, space.bound());
  return {weighted(unsymmetrize(mf.value, space)), mf.condition, mf.flagged, mf.method};
}

OperatorRep difference_quotient(const ScalarFunction& phi, cplx gamma, const WeightedSpace& space) {
  if (gamma == cplx(0.0)) throw InvalidArgument("difference quotient needs gamma != 0");
  const OracleResult perturbed = oracle_calculus(phi, gamma, space);
  const OperatorRep base = multiplication_operator(phi, space);
  return weighted((perturbed.value.matrix - base.matrix) / gamma);
}

// ---- secular ------------------------------------------------------------

SecularResult secular_roots(cplx gamma, const SpectralDensity& density, const Region& region) {
  SecularResult out;
  if (gamma == cplx(0.0) || density.is_zero()) return out;
  if (region.re_min > region.re_max || region.im_min > region.im_max || region.mesh < 1) {
    throw InvalidArgument("secular region is empty");
  }
  const double a = density.support_lo();
  const double b = density.support_hi();
  const bool line = region.im_min == region.im_max;
  const int ny = line ? 1 : region.mesh;
  const int nx = region.mesh;
  BorelOptions opt;
  opt.estimate_error = false;
  const double slack = 1e-9 * (1.0 + region.re_max - region.re_min);

  auto inside = [&](cplx z) {
    return z.real() >= region.re_min - slack && z.real() <= region.re_max + slack &&
           z.imag() >= region.im_min - slack && z.imag() <= region.im_max + slack &&
           distance_to_interval(z, a, b) >= region.support_margin;
  };

  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double fx = nx == 1 ? 0.5 : static_cast<double>(ix) / (nx - 1);
      const double fy = ny == 1 ? 0.0 : static_cast<double>(iy) / (ny - 1);
      cplx z(region.re_min + fx * (region.re_max - region.re_min),
             region.im_min + fy * (region.im_max - region.im_min));
      if (!inside(z)) continue;
      ++out.seeds;
      bool converged = false;
      double residual = 0.0;
      int it = 0;
      for (; it < 80; ++it) {
        const cplx f = 1.0 + gamma * borel_transform(density, z, opt).value;
        residual = std::abs(f);
        if (residual <= 1e-13) {
          converged = true;
          break;
        }
        const cplx df = gamma * borel_derivative(density, z, opt);
        if (df == cplx(0.0)) break;
        const cplx step = f / df;
        z -= step;
        if (!inside(z)) break;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
          residual = std::abs(1.0 + gamma * borel_transform(density, z, opt).value);
          converged = residual <= 1e-10;
          break;
        }
      }
      if (!converged || !inside(z)) {
        ++out.failed_seeds;
        continue;
      }
      const bool duplicate = std::any_of(out.roots.begin(), out.roots.end(),
                                         [&](const SecularRoot& r) { return std::abs(r.lambda - z) < 1e-7; });
      if (!duplicate) out.roots.push_back({z, residual, it});
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const SecularRoot& x, const SecularRoot& y) {
    return x.lambda.real() != y.lambda.real() ? x.lambda.real() < y.lambda.real() : x.lambda.imag() < y.lambda.imag();
  });
  return out;
}

// ---- spectrum map -------------------------------------------------------

const char* to_string(SpectrumClass c) {
  switch (c) {
    case SpectrumClass::Isospectral: return "ISOSPECTRAL";
    case SpectrumClass::Emergent: return "EMERGENT";
    default: return "FAILED";
  }
}

SpectrumMap spectrum_map(const std::vector<cplx>& gammas, const WeightedSpace& space, double tol) {
  SpectrumMap map;
  map.support_lo = space.density().support_lo();
  map.support_hi = space.density().support_hi();
  map.tol = tol;
  map.broadening = 3.0 * space.spacing();
  CVector gs(static_cast<Index>(gammas.size()));
  for (std::size_t q = 0; q < gammas.size(); ++q) gs(static_cast<Index>(q)) = gammas[q];
  std::vector<char> ok;
  const auto spectra =
      kernels::rank_one_spectra(space.support_points(), space.support_weights().cwiseSqrt(), gs, ok);
  for (std::size_t q = 0; q < gammas.size(); ++q) {
    SpectrumEntry e;
    e.gamma = gammas[q];
    e.eigenvalues = spectra[q];
    e.distances.resize(e.eigenvalues.size());
    for (Index k = 0; k < e.eigenvalues.size(); ++k) {
      e.distances(k) = distance_to_interval(e.eigenvalues(k), map.support_lo, map.support_hi);
    }
    e.max_distance = e.distances.size() ? e.distances.maxCoeff() : 0.0;
    if (!ok[q]) {
      e.classification = SpectrumClass::Failed;
    } else if (e.max_distance > tol + map.broadening) {
      e.classification = SpectrumClass::Emergent;
    }
    map.entries.push_back(std::move(e));
  }
  return map;
}

// ---- contour ------------------------------------------------------------

namespace {

cplx contour_trace_integral(const CMatrix& s, cplx center, double radius, int nodes) {
  CVector z(nodes);
  CVector e(nodes);
  for (int m = 0; m < nodes; ++m) {
    e(m) = std::exp(kI * (2.0 * kPi * m / nodes));
    z(m) = center + radius * e(m);
  }
  const CVector traces = kernels::resolvent_traces(s, z);
  cplx acc = 0.0;
  for (int m = 0; m < nodes; ++m) acc += traces(m) * e(m);
  // -(1/2 pi i) * sum tr R(z_m) * i r e_m * (2 pi / M)
  return -radius * acc / static_cast<double>(nodes);
}

}  // namespace

ContourCount count_eigenvalues_contour(cplx gamma, cplx center, double radius, const WeightedSpace& space,
                                       int nodes) {
  if (!(radius > 0.0)) throw InvalidArgument("contour radius must be positive");
  if (nodes < 8 || nodes % 2) throw InvalidArgument("contour needs an even node count >= 8");
  const CMatrix s = symmetric_perturbed(gamma, space);
  ContourCount out;
  out.nodes = nodes;
  out.raw = contour_trace_integral(s, center, radius, nodes);
  const cplx coarse = contour_trace_integral(s, center, radius, nodes / 2);
  out.refinement_change = std::abs(out.raw - coarse);
  if (!std::isfinite(out.raw.real()) || !std::isfinite(out.raw.imag()) || out.refinement_change > 0.05) {
    throw NumericalGuard("contour too close to the spectrum (trapezoid sums disagree by " +
                         std::to_string(out.refinement_change) + ")");
  }
  const double rounded = std::round(out.raw.real());
  out.count = static_cast<int>(rounded);
  out.rounding_gap = std::abs(out.raw - cplx(rounded, 0.0));
  if (out.rounding_gap > 0.2) {
    throw NumericalGuard("contour count is not an integer (gap " + std::to_string(out.rounding_gap) + ")");
  }
  return out;
}

// ---- witnesses ----------------------------------------------------------

const char* to_string(WitnessCase c) { return c == WitnessCase::ImaginaryPart ? "a" : "b"; }

const char* to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Verified: return "VERIFIED";
    case WitnessStatus::Failed: return "FAILED";
    case WitnessStatus::ScaleLimit: return "SCALE_LIMIT";
    default: return "PENDING";
  }
}

namespace {

// Point of the support where |B| is largest just above the axis; ties go to the right end.
double divergence_locus(const SpectralDensity& d) {
  const double a = d.support_lo();
  const double b = d.support_hi();
  const double y = 1e-3;
  const int interior = 199;
  CVector lam(interior + 2);
  for (int k = 0; k < interior; ++k) lam(k) = cplx(a + (b - a) * (k + 1.0) / (interior + 1.0), y);
  lam(interior) = cplx(a, y);
  lam(interior + 1) = cplx(b, y);
  int nodes = 4096;
  while (nodes < 4.0 * kPi * (b - a) / y) nodes <<= 1;
  const CVector vals = borel_batch(d, lam, nodes);
  Index best = 0;
  double top = -1.0;
  for (Index k = 0; k < lam.size(); ++k) {
    if (std::abs(vals(k)) >= top * (1.0 - 1e-9)) {
      if (std::abs(vals(k)) > top) top = std::abs(vals(k));
      best = k;
    }
  }
  return lam(best).real();
}

}  // namespace

WitnessChain cli_failure_witness(const WeightedSpace& space, int n_max) {
  if (n_max < 1) throw InvalidArgument("witness chain needs n_max >= 1");
  const SpectralDensity& d = space.density();
  WitnessChain chain;
  if (d.is_zero()) return chain;
  chain.locus = divergence_locus(d);

  BorelOptions opt;
  opt.estimate_error = false;
  std::vector<WitnessRecord> candidates;
  for (int n = 1; n <= n_max; ++n) {
    WitnessRecord r;
    r.n = n;
    r.lambda = cplx(chain.locus, std::pow(10.0, -n));
    r.borel = borel_transform(d, r.lambda, opt).value;
    r.gamma = -1.0 / r.borel;
    if (!candidates.empty()) {
      const double growth = std::abs(r.borel) - std::abs(candidates.back().borel);
      if (growth < 0.5 * d.mass()) break;
    }
    candidates.push_back(r);
  }
  if (candidates.size() < 2) return chain;

  const double broadening = 3.0 * space.spacing();
  for (auto& r : candidates) {
    const CMatrix m = symmetric_perturbed(r.gamma, space);
    Eigen::ComplexEigenSolver<CMatrix> es(m);
    if (es.info() != Eigen::Success) {
      r.status = WitnessStatus::Failed;
      chain.records.push_back(r);
      continue;
    }
    Index k = 0;
    (es.eigenvalues().array() - r.lambda).abs().minCoeff(&k);
    r.eigenvalue = es.eigenvalues()(k);
    r.eigen_offset = std::abs(r.eigenvalue - r.lambda);
    const CVector v = es.eigenvectors().col(k);
    CMatrix shifted = m;
    shifted.diagonal().array() -= r.eigenvalue;
    r.eigen_residual = (shifted * v).norm() / v.norm();
    r.eigen_verified = r.eigen_residual <= 1e-6 && r.eigen_offset <= broadening;
    chain.records.push_back(r);
  }
  chain.found = true;
  return chain;
}

WitnessRecord divergence_witness(const WitnessRecord& record, const WeightedSpace& space, double tolerance) {
  WitnessRecord r = record;
  const cplx mu = r.eigenvalue;
  const RVector& t = space.support_points();
  ScalarFunction phi;
  if (std::abs(mu.imag()) > 0.0) {
    r.witness_case = WitnessCase::ImaginaryPart;
    r.tau = 1.0 / std::abs(mu.imag());
    const cplx coeff = mu.imag() > 0.0 ? -kI * r.tau : kI * r.tau;
    phi = functions::exp_affine(coeff, mu);
  } else {
    r.witness_case = WitnessCase::RealAxis;
    double d = INFINITY;
    for (Index k = 0; k < t.size(); ++k) d = std::min(d, std::abs(mu - t(k)));
    r.tau = 1.0 / (d * d);
    phi = functions::gaussian(r.tau, mu);
  }
  r.phi_at_eigenvalue = phi(mu);
  r.sup_on_spectrum = 0.0;
  CVector base(t.size());
  for (Index k = 0; k < t.size(); ++k) {
    base(k) = phi(t(k));
    r.sup_on_spectrum = std::max(r.sup_on_spectrum, std::abs(base(k)));
  }
  r.bound = (1.0 - std::exp(-1.0)) / std::abs(r.gamma);

  // Sigma in symmetrized coordinates: the weighted norm is the 2-norm there.
  const MatrixFunction mf = apply_function(phi, symmetric_perturbed(r.gamma, space), false, space.bound());
  r.condition = mf.condition;
  r.method = mf.method;
  CMatrix sigma = mf.value;
  sigma.diagonal() -= base;
  sigma /= r.gamma;
  const bool finite = sigma.allFinite();
  r.measured_norm = finite ? spectral_norm(sigma) : INFINITY;
  if (mf.flagged || !finite) {
    r.status = WitnessStatus::ScaleLimit;
  } else if (r.eigen_verified && r.measured_norm >= r.bound * (1.0 - tolerance)) {
    r.status = WitnessStatus::Verified;
  } else {
    r.status = WitnessStatus::Failed;
  }
  return r;
}

// ---- holomorphy ---------------------------------------------------------

HolomorphyReport holomorphy_probe(const ScalarFunction& phi, const WeightedSpace& space, double radius, int nodes,
                                  const std::vector<cplx>& probes) {
  if (!(radius > 0.0) || nodes < 4) throw InvalidArgument("holomorphy probe needs radius > 0 and >= 4 nodes");
  HolomorphyReport rep;
  rep.radius = radius;
  rep.nodes = nodes;
  rep.delta_hat = certified_radius(space);
  rep.probes = probes;
  for (const cplx& p : probes) {
    if (!(std::abs(p) < radius)) throw InvalidArgument("holomorphy probe points must lie inside the circle");
  }
  const Index n = space.support_size();
  std::vector<CMatrix> values(static_cast<std::size_t>(nodes));
  std::vector<cplx> circle(static_cast<std::size_t>(nodes));
  for (int m = 0; m < nodes; ++m) {
    circle[static_cast<std::size_t>(m)] = radius * std::exp(kI * (2.0 * kPi * m / nodes));
    values[static_cast<std::size_t>(m)] = functional_calculus(phi, circle[static_cast<std::size_t>(m)], space).matrix;
  }
  for (const cplx& p : probes) {
    // Phi(p) = (1/M) sum Phi(z_m) z_m / (z_m - p)
    CMatrix recon = CMatrix::Zero(n, n);
    for (int m = 0; m < nodes; ++m) {
      const cplx z = circle[static_cast<std::size_t>(m)];
      recon += values[static_cast<std::size_t>(m)] * (z / (z - p));
    }
    recon /= static_cast<double>(nodes);
    const CMatrix direct = functional_calculus(phi, p, space).matrix;
    const double res = n ? (recon - direct).cwiseAbs().maxCoeff() : 0.0;
    rep.residuals.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  rep.derivative = CMatrix::Zero(n, n);
  for (int m = 0; m < nodes; ++m) {
    rep.derivative += values[static_cast<std::size_t>(m)] / circle[static_cast<std::size_t>(m)];
  }
  rep.derivative /= static_cast<double>(nodes);
  const OperatorRep formula = derivative_at_zero(phi, space, DiagonalRule::Commutator);
  rep.derivative_residual = n ? (rep.derivative - formula.matrix).cwiseAbs().maxCoeff() : 0.0;
  return rep;
}

}  // namespace gp
