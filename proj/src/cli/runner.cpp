#include "gp/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "gp/btb.hpp"
#include "gp/discretization.hpp"
#include "gp/friedrichs.hpp"
#include "gp/linalg.hpp"
#include "gp/spectra.hpp"

namespace gp::cli {

using nlohmann::json;

namespace {

std::string num(double x) { return format_number(x); }

std::string tag(const std::string& suite, std::size_t k) { return suite + ".g" + std::to_string(k); }

json cjson(cplx z) { return complex_to_json(z); }

// Runs body; numerical guards become a failed check named after the scope.
void guarded(RunReport& report, const std::string& scope, const std::function<void()>& body) {
  try {
    body();
  } catch (const SingularCoupling& e) {
    report.checks.push_back(check_flag(scope + ".guard", false, std::string("singular coupling: ") + e.what()));
  } catch (const NumericalGuard& e) {
    report.checks.push_back(check_flag(scope + ".guard", false, std::string("numerical guard: ") + e.what()));
  }
}

struct Context {
  const ExperimentConfig& cfg;
  WeightedSpace space;
  RunReport& report;
};

void run_btb(Context& ctx) {
  BtbOptions opt;
  opt.half_width = ctx.cfg.half_width;
  opt.points = ctx.cfg.btb_points;
  opt.eps_schedule = ctx.cfg.btb_eps;
  const BTBReport r = btb_analyze(ctx.cfg.density, opt);
  CsvTable table("btb.csv", {"eps", "sup", "argmax"});
  for (std::size_t k = 0; k < r.eps.size(); ++k) table.add_row({num(r.eps[k]), num(r.sup[k]), num(r.argmax[k])});
  ctx.report.tables.push_back(std::move(table));
  ctx.report.results["btb"] = {{"verdict", to_string(r.verdict)},
                               {"expected", to_string(ctx.cfg.density.btb_expected())},
                               {"sup_final", r.sup.empty() ? 0.0 : r.sup.back()},
                               {"fit", {{"c0", r.fit_c0}, {"c1", r.fit_c1}, {"r2", r.fit_r2}}},
                               {"last_decade_ratio", r.last_decade_ratio},
                               {"half_plane_sup", r.half_plane_sup},
                               {"half_plane_argmax", cjson(r.half_plane_argmax)},
                               {"mesh_points", r.mesh_points}};
  switch (ctx.cfg.density.btb_expected()) {
    case BtbExpectation::Yes:
      ctx.report.checks.push_back(check_flag("btb.verdict", r.verdict == BtbVerdict::Bounded,
                                             std::string("expected BOUNDED, got ") + to_string(r.verdict)));
      break;
    case BtbExpectation::No:
      ctx.report.checks.push_back(check_flag("btb.verdict", r.verdict == BtbVerdict::LogDivergent,
                                             std::string("expected LOG_DIVERGENT, got ") + to_string(r.verdict)));
      break;
    case BtbExpectation::Unknown:
      break;  // nothing to compare against
  }
}

void run_waveop(Context& ctx) {
  const auto& tol = ctx.cfg.tol;
  CsvTable table("waveop.csv", {"re_gamma", "im_gamma", "inverse_right", "inverse_left", "unitarity",
                                "adjoint_defect", "intertwining", "inverse_right_strong",
                                "inverse_left_strong", "intertwining_strong", "gamma_norm"});
  json list = json::array();
  std::unique_ptr<WeightedSpace> fine;
  if (ctx.cfg.refine) {
    fine = std::make_unique<WeightedSpace>(build_space(ctx.cfg.density, ctx.cfg.half_width, 2 * ctx.cfg.points));
  }
  for (std::size_t k = 0; k < ctx.cfg.gammas.size(); ++k) {
    const cplx g = ctx.cfg.gammas[k];
    const std::string name = tag("waveop", k);
    guarded(ctx.report, name, [&] {
      const WaveOperatorPair w = wave_operators(g, ctx.space, ctx.cfg.seed);
      const WaveResiduals& r = w.residuals;
      auto& checks = ctx.report.checks;
      checks.push_back(check_at_most(name + ".inverse_right", r.inverse_right, tol.waveop));
      checks.push_back(check_at_most(name + ".inverse_left", r.inverse_left, tol.waveop));
      checks.push_back(check_at_most(name + ".intertwining", r.intertwining, tol.waveop));
      if (r.unitarity) checks.push_back(check_at_most(name + ".unitarity", *r.unitarity, tol.waveop));
      if (r.adjoint_defect) checks.push_back(check_at_most(name + ".adjoint_defect", *r.adjoint_defect, tol.adjoint));
      const auto [fp_plus, fp_minus] = fixed_point_residuals(g, ctx.space);
      checks.push_back(check_at_most(name + ".fixed_point_plus", fp_plus, tol.fixed_point));
      checks.push_back(check_at_most(name + ".fixed_point_minus", fp_minus, tol.fixed_point));
      const double nan = std::nan("");
      table.add_row({num(g.real()), num(g.imag()), num(r.inverse_right), num(r.inverse_left),
                     num(r.unitarity.value_or(nan)), num(r.adjoint_defect.value_or(nan)), num(r.intertwining),
                     num(r.inverse_right_strong), num(r.inverse_left_strong), num(r.intertwining_strong),
                     num(r.gamma_norm)});
      json item = {{"gamma", cjson(g)},
                   {"delta_hat", w.psi.delta_hat},
                   {"strong", {{"inverse_right", r.inverse_right_strong},
                               {"inverse_left", r.inverse_left_strong},
                               {"intertwining", r.intertwining_strong}}}};
      if (r.unitarity_strong) item["strong"]["unitarity"] = *r.unitarity_strong;
      if (fine) {
        const WaveResiduals rf = wave_operators(g, *fine, ctx.cfg.seed).residuals;
        item["refinement_ratio"] = {{"inverse_right", r.inverse_right / rf.inverse_right},
                                    {"intertwining", r.intertwining / rf.intertwining}};
      }
      list.push_back(item);
    });
  }
  ctx.report.tables.push_back(std::move(table));
  ctx.report.results["waveop"] = list;
}

void run_calculus(Context& ctx) {
  CsvTable table("calculus.csv", {"re_gamma", "im_gamma", "relative_frobenius", "condition", "method"});
  for (std::size_t k = 0; k < ctx.cfg.gammas.size(); ++k) {
    const cplx g = ctx.cfg.gammas[k];
    const std::string name = tag("calculus", k);
    guarded(ctx.report, name, [&] {
      const OracleResult orc = oracle_calculus(ctx.cfg.phi, g, ctx.space);
      if (orc.flagged) {
        ctx.report.checks.push_back(check_flag(name + ".oracle_condition", false,
                                               "eigenvector condition " + num(orc.condition) + " above guard"));
        return;
      }
      const OperatorRep fc = functional_calculus(ctx.cfg.phi, g, ctx.space);
      const double rel = relative_frobenius(fc.matrix, orc.value.matrix);
      ctx.report.checks.push_back(check_at_most(name + ".relative_frobenius", rel, ctx.cfg.tol.calculus));
      table.add_row({num(g.real()), num(g.imag()), num(rel), num(orc.condition), orc.method});
    });
  }
  ctx.report.tables.push_back(std::move(table));
}

void run_derivative(Context& ctx) {
  guarded(ctx.report, "derivative", [&] {
    const OperatorRep d = derivative_at_zero(ctx.cfg.phi, ctx.space);
    const double h = std::min(1e-2, 0.25 * certified_radius(ctx.space));
    const OperatorRep q1 = difference_quotient(ctx.cfg.phi, h, ctx.space);
    const OperatorRep q2 = difference_quotient(ctx.cfg.phi, 0.5 * h, ctx.space);
    const OperatorRep fd = add(q2, add(q2, q1, -1.0));  // Richardson: 2 q(h/2) - q(h)
    const double scale = operator_norm(fd, ctx.space);
    const double gap = operator_norm(add(d, fd, -1.0), ctx.space);
    const double rel = scale > 0.0 ? gap / scale : gap;
    ctx.report.checks.push_back(check_at_most("derivative.vs_difference_quotient", rel, ctx.cfg.tol.derivative_fd));
    json res = {{"step", h}, {"relative_gap", rel}, {"norm", operator_norm(d, ctx.space)}};
    if (ctx.cfg.phi_name == "identity") {
      const double e = operator_norm(add(d, perturbation_operator(ctx.space), -1.0), ctx.space);
      ctx.report.checks.push_back(check_at_most("derivative.identity_equals_B", e, ctx.cfg.tol.derivative_exact));
      res["identity_gap"] = e;
    }
    ctx.report.results["derivative"] = res;
  });
}

void run_spectrum_map(Context& ctx) {
  const SpectrumMap map = spectrum_map(ctx.cfg.gammas, ctx.space, ctx.cfg.tol.spectrum);
  CsvTable table("spectrum_map.csv", {"re_gamma", "im_gamma", "re_lambda", "im_lambda", "dist_to_spectrum"});
  json list = json::array();
  for (std::size_t k = 0; k < map.entries.size(); ++k) {
    const SpectrumEntry& e = map.entries[k];
    for (Index j = 0; j < e.eigenvalues.size(); ++j) {
      table.add_row({num(e.gamma.real()), num(e.gamma.imag()), num(e.eigenvalues(j).real()),
                     num(e.eigenvalues(j).imag()), num(e.distances(j))});
    }
    list.push_back({{"gamma", cjson(e.gamma)}, {"class", to_string(e.classification)},
                    {"max_distance", e.max_distance}});
    ctx.report.checks.push_back(check_flag(tag("spectrum_map", k) + ".solved",
                                           e.classification != SpectrumClass::Failed));
  }
  ctx.report.tables.push_back(std::move(table));
  ctx.report.results["spectrum_map"] = {{"support", {map.support_lo, map.support_hi}},
                                        {"tol", map.tol}, {"broadening", map.broadening}, {"entries", list}};
}

void run_secular(Context& ctx) {
  const auto& d = ctx.cfg.density;
  CsvTable table("secular_roots.csv", {"re_gamma", "im_gamma", "re_lambda", "im_lambda", "dist_to_spectrum"});
  json list = json::array();
  const SpectrumMap map = spectrum_map(ctx.cfg.gammas, ctx.space, ctx.cfg.tol.spectrum);
  const double dt = ctx.space.spacing();
  for (std::size_t k = 0; k < ctx.cfg.gammas.size(); ++k) {
    const cplx g = ctx.cfg.gammas[k];
    const std::string name = tag("secular", k);
    const SecularResult res = secular_roots(g, d, ctx.cfg.secular_region);
    const CVector& eig = map.entries[k].eigenvalues;
    json roots = json::array();
    for (std::size_t j = 0; j < res.roots.size(); ++j) {
      const SecularRoot& r = res.roots[j];
      const double dist = distance_to_interval(r.lambda, d.support_lo(), d.support_hi());
      table.add_row({num(g.real()), num(g.imag()), num(r.lambda.real()), num(r.lambda.imag()), num(dist)});
      const std::string rn = name + ".root" + std::to_string(j);
      ctx.report.checks.push_back(check_at_most(rn + ".residual", r.residual, ctx.cfg.tol.secular_residual));
      double offset = INFINITY;
      for (Index m = 0; m < eig.size(); ++m) offset = std::min(offset, std::abs(eig(m) - r.lambda));
      // Roots hugging the support are not resolved by the grid.
      if (dist >= 3.0 * dt) ctx.report.checks.push_back(check_at_most(rn + ".matrix_offset", offset, 3.0 * dt));
      roots.push_back({{"lambda", cjson(r.lambda)}, {"residual", r.residual}, {"iterations", r.iterations},
                       {"matrix_offset", offset}});
    }
    json item = {{"gamma", cjson(g)}, {"roots", roots}, {"seeds", res.seeds}, {"failed_seeds", res.failed_seeds}};
    guarded(ctx.report, name + ".contour", [&] {
      const ContourCount cc = count_eigenvalues_contour(g, ctx.cfg.contour_center, ctx.cfg.contour_radius,
                                                        ctx.space, ctx.cfg.contour_nodes);
      int inside = 0;
      for (Index m = 0; m < eig.size(); ++m) inside += std::abs(eig(m) - ctx.cfg.contour_center) < ctx.cfg.contour_radius;
      ctx.report.checks.push_back(check_at_most(name + ".contour.rounding_gap", cc.rounding_gap, ctx.cfg.tol.contour_gap));
      ctx.report.checks.push_back(check_flag(name + ".contour.matches_matrix", cc.count == inside,
                                             "contour " + std::to_string(cc.count) + " vs matrix " +
                                                 std::to_string(inside)));
      item["contour"] = {{"count", cc.count}, {"raw", cjson(cc.raw)}, {"rounding_gap", cc.rounding_gap},
                         {"refinement_change", cc.refinement_change}, {"matrix_count", inside}};
    });
    list.push_back(item);
  }
  ctx.report.tables.push_back(std::move(table));
  ctx.report.results["secular"] = list;
}

void run_witness(Context& ctx) {
  const WitnessChain chain = cli_failure_witness(ctx.space, ctx.cfg.witness_n_max);
  CsvTable table("witness.csv", {"n", "re_lambda", "im_lambda", "re_gamma", "im_gamma", "re_eigenvalue",
                                 "im_eigenvalue", "eigen_residual", "case", "tau", "bound", "measured_norm",
                                 "status"});
  json records = json::array();
  if (!chain.found) {
    // A jump density must produce a witness; otherwise silence is consistent.
    const bool ok = ctx.cfg.density.btb_expected() != BtbExpectation::No;
    ctx.report.checks.push_back(check_flag("witness.no_witness_consistent", ok,
                                           ok ? "NO_WITNESS" : "NO_WITNESS for a density expected to diverge"));
  }
  double previous = INFINITY;
  for (const WitnessRecord& base : chain.records) {
    const std::string name = "witness.n" + std::to_string(base.n);
    WitnessRecord w = base;
    guarded(ctx.report, name, [&] { w = divergence_witness(base, ctx.space, ctx.cfg.tol.witness_margin); });
    table.add_row({std::to_string(w.n), num(w.lambda.real()), num(w.lambda.imag()), num(w.gamma.real()),
                   num(w.gamma.imag()), num(w.eigenvalue.real()), num(w.eigenvalue.imag()), num(w.eigen_residual),
                   to_string(w.witness_case), num(w.tau), num(w.bound), num(w.measured_norm), to_string(w.status)});
    records.push_back({{"n", w.n}, {"lambda", cjson(w.lambda)}, {"borel", cjson(w.borel)}, {"gamma", cjson(w.gamma)},
                       {"eigenvalue", cjson(w.eigenvalue)}, {"eigen_offset", w.eigen_offset},
                       {"eigen_residual", w.eigen_residual}, {"eigen_verified", w.eigen_verified},
                       {"case", to_string(w.witness_case)}, {"tau", w.tau}, {"bound", w.bound},
                       {"measured_norm", w.measured_norm}, {"sup_on_spectrum", w.sup_on_spectrum},
                       {"condition", w.condition}, {"method", w.method}, {"status", to_string(w.status)}});
    if (w.status == WitnessStatus::ScaleLimit) {
      records.back()["note"] = "below grid resolution";
      continue;
    }
    ctx.report.checks.push_back(check_at_most(name + ".eigen_residual", w.eigen_residual, ctx.cfg.tol.witness_residual));
    ctx.report.checks.push_back(check_at_least(name + ".norm_over_bound",
                                               w.bound > 0.0 ? w.measured_norm / w.bound : 0.0,
                                               1.0 - ctx.cfg.tol.witness_margin));
    ctx.report.checks.push_back(check_flag(name + ".gamma_decreasing", std::abs(w.gamma) < previous));
    previous = std::abs(w.gamma);
  }
  ctx.report.tables.push_back(std::move(table));
  ctx.report.results["witness"] = {{"status", chain.found ? "WITNESS" : "NO_WITNESS"},
                                   {"locus", chain.locus}, {"records", records}};
}

void run_holomorphy(Context& ctx) {
  guarded(ctx.report, "holomorphy", [&] {
    const double delta_hat = certified_radius(ctx.space);
    const double r = ctx.cfg.holomorphy_radius_fraction * delta_hat;
    const HolomorphyReport h = holomorphy_probe(ctx.cfg.phi, ctx.space, r, ctx.cfg.holomorphy_nodes,
                                                {0.0, cplx(0.3 * r, 0.0), 0.5 * r * std::exp(kI * 1.0)});
    ctx.report.checks.push_back(check_at_most("holomorphy.cauchy_residual", h.max_residual, ctx.cfg.tol.holomorphy));
    json probes = json::array();
    for (std::size_t k = 0; k < h.probes.size(); ++k) {
      probes.push_back({{"gamma", cjson(h.probes[k])}, {"residual", h.residuals[k]}});
    }
    ctx.report.results["holomorphy"] = {{"delta_hat", delta_hat}, {"radius", r}, {"nodes", h.nodes},
                                        {"probes", probes}, {"derivative_residual", h.derivative_residual}};
  });
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"btb", "waveop", "calculus", "derivative", "spectrum-map",
                                                 "secular", "witness", "holomorphy", "all"};
  return names;
}

RunReport run(const std::string& subcommand, const ExperimentConfig& config) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), subcommand) == names.end()) {
    throw ConfigError("subcommand", "unknown subcommand '" + subcommand + "'");
  }
  RunReport report;
  report.subcommand = subcommand;
  report.config = config.echo;
  Context ctx{config, build_space(config.density, config.half_width, config.points), report};
  const bool all = subcommand == "all";
  if (all || subcommand == "btb") run_btb(ctx);
  if (all || subcommand == "waveop") run_waveop(ctx);
  if (all || subcommand == "calculus") run_calculus(ctx);
  if (all || subcommand == "derivative") run_derivative(ctx);
  if (all || subcommand == "spectrum-map") run_spectrum_map(ctx);
  if (all || subcommand == "secular") run_secular(ctx);
  if (all || subcommand == "witness") run_witness(ctx);
  if (all || subcommand == "holomorphy") run_holomorphy(ctx);
  return report;
}

}  // namespace gp::cli
