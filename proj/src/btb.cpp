#include "gp/btb.hpp"

#include <algorithm>
#include <cmath>

#include "gp/discretization.hpp"
#include "gp/transforms.hpp"

namespace gp {

const char* to_string(BtbVerdict v) {
  switch (v) {
    case BtbVerdict::Bounded: return "BOUNDED";
    case BtbVerdict::LogDivergent: return "LOG_DIVERGENT";
    default: return "INCONCLUSIVE";
  }
}

namespace {

void validate_schedule(const std::vector<double>& eps) {
  if (eps.size() < 2) throw InvalidArgument("BTB eps schedule needs at least two entries");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0)) throw InvalidArgument("BTB eps schedule entries must be positive");
    if (k > 0 && !(eps[k] < eps[k - 1])) throw InvalidArgument("BTB eps schedule must be decreasing");
  }
  if (eps.front() / eps.back() < 100.0 * (1.0 - 1e-9)) {
    throw InvalidArgument("BTB eps schedule must span at least two decades");
  }
}

// Grid points plus a refined patch around each support end.
RVector sample_points(const Grid& grid, double a, double b, int refine) {
  std::vector<double> xs;
  for (Index j = 0; j < grid.ssize(); ++j) xs.push_back(grid.point(j));
  const double dt = grid.spacing();
  if (refine > 1) {
    for (double end : {a, b}) {
      const int span = 8 * refine;
      for (int k = -span; k <= span; ++k) xs.push_back(end + k * dt / refine);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  RVector u(static_cast<Index>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) u(static_cast<Index>(k)) = xs[k];
  return u;
}

void half_plane_mesh(const SpectralDensity& d, const BtbOptions& opt, BTBReport& r) {
  if (d.is_zero()) return;
  const double a = d.support_lo();
  const double b = d.support_hi();
  const double pad = std::max(1.0, 0.5 * (b - a));
  for (double y = opt.mesh_y_max; y >= opt.mesh_y_min * (1.0 - 1e-12); y *= 0.5) {
    const double x0 = a - pad;
    const double x1 = b + pad;
    const auto count = static_cast<Index>(std::ceil((x1 - x0) / y)) + 1;
    CVector lam(count);
    for (Index k = 0; k < count; ++k) lam(k) = cplx(x0 + (x1 - x0) * static_cast<double>(k) / (count - 1), y);
    int nodes = 4096;
    while (nodes < 4.0 * kPi * (b - a) / y && nodes < (1 << 22)) nodes <<= 1;
    const CVector vals = borel_batch(d, lam, nodes);
    for (Index k = 0; k < count; ++k) {
      if (std::abs(vals(k)) > r.half_plane_sup) {
        r.half_plane_sup = std::abs(vals(k));
        r.half_plane_argmax = lam(k);
      }
    }
    r.mesh_points += static_cast<std::size_t>(count);
  }
}

}  // namespace

BTBReport btb_analyze(const SpectralDensity& density, const BtbOptions& options) {
  validate_schedule(options.eps_schedule);
  BTBReport r;
  r.eps = options.eps_schedule;

  const Grid grid(options.half_width, options.points);
  VectorRep rho{CVector(grid.ssize()), SpaceTag::Flat};
  for (Index j = 0; j < grid.ssize(); ++j) rho.samples(j) = density(grid.point(j));
  const RVector u = sample_points(grid, density.support_lo(), density.support_hi(), options.endpoint_refine);
  CVector rho_u(u.size());
  for (Index q = 0; q < u.size(); ++q) rho_u(q) = density(u(q));

  for (double eps : r.eps) {
    const CVector vals = smoothed_projection_at(rho, eps, grid, u, rho_u);
    Index best = 0;
    const double s = vals.cwiseAbs().maxCoeff(&best);
    r.sup.push_back(s);
    r.argmax.push_back(u(best));
  }

  // sup ~ c0 + c1 log(1/eps)
  const auto n = static_cast<double>(r.eps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < r.eps.size(); ++k) {
    const double x = std::log(1.0 / r.eps[k]);
    sx += x;
    sy += r.sup[k];
    sxx += x * x;
    sxy += x * r.sup[k];
  }
  const double denom = n * sxx - sx * sx;
  r.fit_c1 = (n * sxy - sx * sy) / denom;
  r.fit_c0 = (sy - r.fit_c1 * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (std::size_t k = 0; k < r.eps.size(); ++k) {
    const double pred = r.fit_c0 + r.fit_c1 * std::log(1.0 / r.eps[k]);
    ss_res += (r.sup[k] - pred) * (r.sup[k] - pred);
    ss_tot += (r.sup[k] - mean) * (r.sup[k] - mean);
  }
  r.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

  const double eps_min = r.eps.back();
  double lo = r.sup.back(), hi = r.sup.back();
  for (std::size_t k = 0; k < r.eps.size(); ++k) {
    if (r.eps[k] <= 10.0 * eps_min * (1.0 + 1e-12)) {
      lo = std::min(lo, r.sup[k]);
      hi = std::max(hi, r.sup[k]);
    }
  }
  r.last_decade_ratio = lo > 0.0 ? hi / lo : (hi > 0.0 ? INFINITY : 1.0);

  if (hi == 0.0 || r.last_decade_ratio <= options.bounded_factor) {
    r.verdict = BtbVerdict::Bounded;
  } else if (r.fit_r2 >= options.min_r2 && r.fit_c1 >= options.min_relative_slope * r.sup.back()) {
    r.verdict = BtbVerdict::LogDivergent;
  } else {
    r.verdict = BtbVerdict::Inconclusive;
  }

  half_plane_mesh(density, options, r);
  return r;
}

}  // namespace gp
