#include "gp/transforms.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/FFT>

#include "gp/kernels.hpp"

namespace gp {

namespace {

void require_flat(const VectorRep& f, const char* what) {
  if (f.tag != SpaceTag::Flat) throw TagMismatch(std::string(what) + " expects a FLAT vector");
  if (!is_power_of_two(static_cast<std::size_t>(f.samples.size()))) {
    throw InvalidArgument(std::string(what) + " needs a power-of-two length");
  }
}

CVector apply_multiplier(const CVector& f, const RVector& m) {
  Eigen::FFT<double> fft;
  std::vector<cplx> in(f.data(), f.data() + f.size());
  std::vector<cplx> bins;
  fft.fwd(bins, in);
  for (std::size_t k = 0; k < bins.size(); ++k) bins[k] *= m(static_cast<Index>(k));
  std::vector<cplx> back;
  fft.inv(back, bins);
  return Eigen::Map<CVector>(back.data(), static_cast<Index>(back.size()));
}

// Cosine-clustered midpoint rule on [a, b].
void cosine_nodes(double a, double b, int n, RVector& t, RVector& w) {
  t.resize(n);
  w.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int m = 0; m < n; ++m) {
    const double theta = (m + 0.5) * kPi / n;
    t(m) = mid - half * std::cos(theta);
    w(m) = half * std::sin(theta) * kPi / n;
  }
}

int auto_nodes(double span, double distance) {
  const double want = 4.0 * kPi * span / std::max(distance, 1e-300);
  int n = 4096;
  while (n < want && n < (1 << 22)) n <<= 1;
  return n;
}

double distance_to_interval(cplx z, double a, double b) {
  const double x = std::clamp(z.real(), a, b);
  return std::abs(z - cplx(x, 0.0));
}

// Reference point for the singularity subtraction, nudged inside so jump
// densities use their interior value.
double subtraction_point(const SpectralDensity& d, cplx lambda) {
  const double a = d.support_lo();
  const double b = d.support_hi();
  const double nudge = 1e-9 * (b - a);
  return std::clamp(lambda.real(), a + nudge, b - nudge);
}

struct Quadrature {
  cplx value;
  cplx derivative;
};

Quadrature borel_quadrature(const SpectralDensity& d, cplx lambda, int n, bool want_derivative) {
  const double a = d.support_lo();
  const double b = d.support_hi();
  RVector t, w;
  cosine_nodes(a, b, n, t, w);
  RVector v(n);
  for (int m = 0; m < n; ++m) v(m) = d(t(m));
  const double x0 = subtraction_point(d, lambda);
  const double v0 = d(x0);
  CVector lam(1);
  lam(0) = lambda;
  RVector ref(1);
  ref(0) = v0;
  CVector first, second;
  kernels::serial::cauchy_sums(t, w, v, lam, ref, first, want_derivative ? &second : nullptr);
  Quadrature q;
  q.value = first(0) + v0 * std::log((b - lambda) / (a - lambda));
  if (want_derivative) q.derivative = second(0) + v0 * (1.0 / (a - lambda) - 1.0 / (b - lambda));
  return q;
}

cplx shifted_point(const SpectralDensity& d, cplx lambda, const BorelOptions& opt, double& shift) {
  shift = 0.0;
  const double a = d.support_lo();
  const double b = d.support_hi();
  const bool over_support = lambda.real() >= a && lambda.real() <= b;
  if (!over_support) return lambda;
  if (lambda.imag() == 0.0) throw InvalidArgument("Borel transform evaluated on the support with Im lambda = 0");
  const double s = std::max(opt.min_shift, 2.0 * opt.grid_spacing);
  if (std::abs(lambda.imag()) >= s) return lambda;
  shift = s - std::abs(lambda.imag());
  return {lambda.real(), std::copysign(s, lambda.imag())};
}

}  // namespace

RVector riesz_multiplier(std::size_t n) {
  RVector m = RVector::Zero(static_cast<Index>(n));
  const Index half = static_cast<Index>(n / 2);
  m(0) = 0.5;
  for (Index k = 1; k < half; ++k) m(k) = 1.0;
  if (n >= 2) m(half) = 0.5;
  return m;
}

RVector hilbert_multiplier(std::size_t n) {
  RVector m = RVector::Zero(static_cast<Index>(n));
  const Index half = static_cast<Index>(n / 2);
  for (Index k = 1; k < half; ++k) {
    m(k) = 1.0;
    m(static_cast<Index>(n) - k) = -1.0;
  }
  return m;
}

VectorRep riesz_projection(const VectorRep& f) {
  require_flat(f, "riesz_projection");
  return {apply_multiplier(f.samples, riesz_multiplier(static_cast<std::size_t>(f.samples.size()))), SpaceTag::Flat};
}

VectorRep conjugate_projection(const VectorRep& f) {
  require_flat(f, "conjugate_projection");
  const RVector m = RVector::Ones(f.samples.size()) - riesz_multiplier(static_cast<std::size_t>(f.samples.size()));
  return {apply_multiplier(f.samples, m), SpaceTag::Flat};
}

VectorRep hilbert_transform(const VectorRep& f) {
  require_flat(f, "hilbert_transform");
  return {apply_multiplier(f.samples, hilbert_multiplier(static_cast<std::size_t>(f.samples.size()))), SpaceTag::Flat};
}

VectorRep cauchy_projection(const VectorRep& f) {
  require_flat(f, "cauchy_projection");
  const Index n = f.samples.size();
  const Index p = 2 * n;
  // y_j = sum_k h(j - k) f_k with h(0) = 1/2, h(e) = i / (2 pi e).
  std::vector<cplx> kernel(static_cast<std::size_t>(p), cplx(0.0));
  kernel[0] = 0.5;
  for (Index e = 1; e < n; ++e) {
    const cplx h = kI / (2.0 * kPi * static_cast<double>(e));
    kernel[static_cast<std::size_t>(e)] = h;
    kernel[static_cast<std::size_t>(p - e)] = -h;
  }
  std::vector<cplx> padded(static_cast<std::size_t>(p), cplx(0.0));
  for (Index j = 0; j < n; ++j) padded[static_cast<std::size_t>(j)] = f.samples(j);
  Eigen::FFT<double> fft;
  std::vector<cplx> ks, fs, out;
  fft.fwd(ks, kernel);
  fft.fwd(fs, padded);
  for (std::size_t k = 0; k < fs.size(); ++k) fs[k] *= ks[k];
  fft.inv(out, fs);
  return {Eigen::Map<CVector>(out.data(), n), SpaceTag::Flat};
}

CMatrix cauchy_projection_block(const RVector& rows, const RVector& cols, double dt) {
  return kernels::cauchy_block(rows, cols, dt);
}

CVector smoothed_projection_at(const VectorRep& f, double eps, const Grid& grid, const RVector& u,
                               const CVector& f_at_u) {
  if (!(eps > 0.0)) throw InvalidArgument("smoothed_projection needs eps > 0");
  if (f.tag != SpaceTag::Flat || f.samples.size() != grid.ssize()) {
    throw TagMismatch("smoothed_projection expects a FLAT vector on its grid");
  }
  const double dt = grid.spacing();
  const double lo = grid.point(0) - 0.5 * dt;
  const double hi = grid.point(grid.ssize() - 1) + 0.5 * dt;
  return kernels::smoothed_projection(grid.points(), f.samples, dt, u, f_at_u, eps, lo, hi);
}

VectorRep smoothed_projection(const VectorRep& f, double eps, const Grid& grid) {
  return {smoothed_projection_at(f, eps, grid, grid.points(), f.samples), SpaceTag::Flat};
}

BorelEvaluation borel_transform(const SpectralDensity& density, cplx lambda, const BorelOptions& options) {
  BorelEvaluation ev;
  ev.lambda = lambda;
  ev.evaluated_at = shifted_point(density, lambda, options, ev.shift);
  if (density.is_zero()) {
    ev.value = 0.0;
    return ev;
  }
  const double a = density.support_lo();
  const double b = density.support_hi();
  const int n = options.nodes > 0 ? options.nodes
                                  : auto_nodes(b - a, distance_to_interval(ev.evaluated_at, a, b));
  ev.value = borel_quadrature(density, ev.evaluated_at, n, false).value;
  if (options.estimate_error) {
    const cplx coarse = borel_quadrature(density, ev.evaluated_at, n / 2, false).value;
    ev.error_estimate = std::abs(ev.value - coarse);
  }
  return ev;
}

cplx borel_derivative(const SpectralDensity& density, cplx lambda, const BorelOptions& options) {
  double shift = 0.0;
  const cplx z = shifted_point(density, lambda, options, shift);
  if (density.is_zero()) return 0.0;
  const double a = density.support_lo();
  const double b = density.support_hi();
  const int n = options.nodes > 0 ? options.nodes : auto_nodes(b - a, distance_to_interval(z, a, b));
  return borel_quadrature(density, z, n, true).derivative;
}

CVector borel_batch(const SpectralDensity& density, const CVector& lambdas, int nodes) {
  CVector out = CVector::Zero(lambdas.size());
  if (density.is_zero() || lambdas.size() == 0) return out;
  const double a = density.support_lo();
  const double b = density.support_hi();
  RVector t, w;
  cosine_nodes(a, b, nodes, t, w);
  RVector v(nodes);
  for (int m = 0; m < nodes; ++m) v(m) = density(t(m));
  RVector ref(lambdas.size());
  for (Index q = 0; q < lambdas.size(); ++q) {
    if (lambdas(q).imag() == 0.0 && lambdas(q).real() >= a && lambdas(q).real() <= b) {
      throw InvalidArgument("Borel transform evaluated on the support with Im lambda = 0");
    }
    ref(q) = density(subtraction_point(density, lambdas(q)));
  }
  CVector first;
  kernels::cauchy_sums(t, w, v, lambdas, ref, first, nullptr);
  for (Index q = 0; q < lambdas.size(); ++q) {
    out(q) = first(q) + ref(q) * std::log((b - lambdas(q)) / (a - lambdas(q)));
  }
  return out;
}

double stieltjes_inversion(const SpectralDensity& density, double a, double b,
                           const std::vector<double>& tau_schedule) {
  if (tau_schedule.empty()) throw InvalidArgument("stieltjes_inversion needs a nonempty tau schedule");
  for (double tau : tau_schedule) {
    if (!(tau > 0.0)) throw InvalidArgument("stieltjes_inversion needs tau > 0");
  }
  if (a > b) throw InvalidArgument("stieltjes_inversion needs a <= b");
  if (a == b || density.is_zero()) return 0.0;

  // int_a^b Im B(t + i tau) dt = int rho(s) [atan((b-s)/tau) - atan((a-s)/tau)] ds.
  std::vector<double> breaks{density.support_lo()};
  for (double x : {a, b}) {
    if (x > density.support_lo() && x < density.support_hi()) breaks.push_back(x);
  }
  breaks.push_back(density.support_hi());
  std::sort(breaks.begin(), breaks.end());

  std::vector<double> masses;
  for (double tau : tau_schedule) {
    double acc = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      if (breaks[p + 1] <= breaks[p]) continue;
      RVector t, w;
      cosine_nodes(breaks[p], breaks[p + 1], 8192, t, w);
      for (Index m = 0; m < t.size(); ++m) {
        acc += w(m) * density(t(m)) * (std::atan((b - t(m)) / tau) - std::atan((a - t(m)) / tau));
      }
    }
    masses.push_back(acc / kPi);
  }
  if (masses.size() == 1) return masses.front();

  // Least-squares polynomial in tau (degree <= 2), intercept = limit.
  const Index k = static_cast<Index>(masses.size());
  const Index deg = std::min<Index>(2, k - 1);
  RMatrix design(k, deg + 1);
  RVector rhs(k);
  for (Index i = 0; i < k; ++i) {
    double p = 1.0;
    for (Index c = 0; c <= deg; ++c) {
      design(i, c) = p;
      p *= tau_schedule[static_cast<std::size_t>(i)];
    }
    rhs(i) = masses[static_cast<std::size_t>(i)];
  }
  const RVector coef = design.colPivHouseholderQr().solve(rhs);
  return coef(0);
}

}  // namespace gp
