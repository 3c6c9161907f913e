#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "gp/linalg.hpp"
#include "gp/spectra.hpp"

using namespace gp;

namespace {

const double kCothHalf = 1.0 / std::tanh(0.5);

const WeightedSpace& semicircle() {
  static const WeightedSpace s = build_space(density_library("semicircle"), 4.0, 512);
  return s;
}
const WeightedSpace& indicator() {
  static const WeightedSpace s = build_space(density_library("indicator"), 4.0, 1024);
  return s;
}

Region real_line(double lo, double hi) {
  Region r;
  r.re_min = lo;
  r.re_max = hi;
  return r;
}

}  // namespace

TEST_CASE("oracle reproduces polynomials") {
  const auto& space = semicircle();
  const CMatrix ag = perturbed_operator(0.05, space).matrix;
  const OracleResult t = oracle_calculus(functions::identity(), 0.05, space);
  CHECK(t.method == "hermitian-eig");
  CHECK(relative_frobenius(t.value.matrix, ag) <= 1e-12);
  const OracleResult sq = oracle_calculus(functions::square(), 0.05, space);
  CHECK(relative_frobenius(sq.value.matrix, ag * ag) <= 1e-10);
  const OracleResult c = oracle_calculus(functions::square(), cplx(0.03, 0.02), space);
  const CMatrix agc = perturbed_operator(cplx(0.03, 0.02), space).matrix;
  CHECK(relative_frobenius(c.value.matrix, agc * agc) <= 1e-10);
  CHECK_FALSE(c.flagged);
}

TEST_CASE("oracle and wave-operator calculus for exp") {
  const auto& space = semicircle();
  const OperatorRep fc = functional_calculus(functions::exponential(), 0.05, space);
  const OracleResult orc = oracle_calculus(functions::exponential(), 0.05, space);
  // Shares the grid-independent floor of the wave operators (about 5e-3 here).
  CHECK(relative_frobenius(fc.matrix, orc.value.matrix) <= 1e-2);
}

TEST_CASE("secular roots") {
  const auto ind = density_library("indicator");
  const auto semi = density_library("semicircle");
  const SecularResult ri = secular_roots(1.0, ind, real_line(1.01, 4.0));
  REQUIRE(ri.roots.size() == 1);
  CHECK(std::abs(ri.roots[0].lambda - kCothHalf) <= 1e-6);
  CHECK(ri.roots[0].residual <= 1e-10);
  const SecularResult rs = secular_roots(1.0, semi, real_line(1.01, 4.0));
  REQUIRE(rs.roots.size() == 1);
  CHECK(std::abs(rs.roots[0].lambda - 1.25) <= 1e-6);
  CHECK(secular_roots(0.0, semi, real_line(-3.0, 3.0)).roots.empty());
}

TEST_CASE("secular roots match matrix eigenvalues (property)") {
  testgen::Source src(99);
  const auto& space = indicator();
  for (int trial = 0; trial < 4; ++trial) {
    const double g = src.uniform(0.5, 2.0) * (src.integer(0, 1) ? 1.0 : -1.0);
    const SecularResult r = secular_roots(g, space.density(), real_line(-4.0, 4.0));
    const SpectrumMap map = spectrum_map({g}, space, 0.0);
    for (const auto& root : r.roots) {
      if (distance_to_interval(root.lambda, -1.0, 1.0) < 3.0 * space.spacing()) continue;
      const CVector& e = map.entries[0].eigenvalues;
      CHECK((e.array() - root.lambda).abs().minCoeff() <= 3.0 * space.spacing());
    }
  }
}

TEST_CASE("spectrum map") {
  const auto& space = semicircle();
  std::vector<cplx> circle;
  for (int k = 0; k < 8; ++k) circle.push_back(0.3 * std::exp(kI * (2.0 * kPi * k / 8.0)));
  const SpectrumMap m = spectrum_map(circle, space, 0.0);
  for (const auto& e : m.entries) CHECK(e.classification == SpectrumClass::Isospectral);
  const SpectrumMap z = spectrum_map({0.0}, space, 0.0);
  CHECK(z.entries[0].classification == SpectrumClass::Isospectral);
  CHECK(z.entries[0].max_distance == 0.0);
  CHECK(z.entries[0].eigenvalues.size() == space.support_size());
  CHECK(distance_to_interval(cplx(2.0, 1.0), -1.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(distance_to_interval(cplx(0.5, -0.2), -1.0, 1.0) == doctest::Approx(0.2));
}

TEST_CASE("emergent eigenvalue from the first witness step") {
  const auto& space = indicator();
  const WitnessChain chain = cli_failure_witness(space, 1 + 1);
  REQUIRE(chain.found);
  const cplx g1 = chain.records.front().gamma;
  const SpectrumMap m = spectrum_map({g1}, space, 0.0);
  CHECK(m.entries[0].classification == SpectrumClass::Emergent);
  CHECK(m.entries[0].max_distance >= 0.05);
}

TEST_CASE("contour count") {
  const auto semi = build_space(density_library("semicircle"), 4.0, 1024);
  CHECK(count_eigenvalues_contour(0.0, 3.0, 0.5, semi).count == 0);
  CHECK(count_eigenvalues_contour(1.0, 1.25, 0.05, semi).count == 1);
  CHECK(count_eigenvalues_contour(1.0, 2.164, 0.1, indicator()).count == 1);
}

TEST_CASE("contour count equals matrix count (property)") {
  testgen::Source src(12);
  const auto& space = semicircle();
  for (int trial = 0; trial < 4; ++trial) {
    const cplx g = cplx(src.uniform(-1.5, 1.5), src.uniform(-0.5, 0.5));
    const cplx center(src.uniform(1.2, 2.5) * (src.integer(0, 1) ? 1.0 : -1.0), src.uniform(-0.3, 0.3));
    const double radius = src.uniform(0.1, 0.6);
    const CVector e = spectrum_map({g}, space, 0.0).entries[0].eigenvalues;
    // Skip draws with an eigenvalue hugging the contour.
    const double clearance = ((e.array() - center).abs() - radius).abs().minCoeff();
    if (clearance < 0.02) continue;
    int inside = 0;
    for (Index k = 0; k < e.size(); ++k) inside += std::abs(e(k) - center) < radius;
    const ContourCount cc = count_eigenvalues_contour(g, center, radius, space);
    CHECK(cc.count == inside);
    CHECK(cc.rounding_gap <= 0.05);
  }
}

TEST_CASE("witness chain for the indicator") {
  const auto& space = indicator();
  const WitnessChain chain = cli_failure_witness(space, 3);
  REQUIRE(chain.found);
  REQUIRE(chain.records.size() == 3);
  CHECK(chain.locus == doctest::Approx(1.0).epsilon(1e-6));
  const WitnessRecord& r3 = chain.records[2];
  CHECK(std::abs(r3.borel - cplx(-7.601, 1.571)) <= 2e-3);
  CHECK(std::abs(r3.gamma - cplx(0.1262, 0.0261)) <= 2e-4);
  const WitnessRecord w = divergence_witness(r3, space);
  CHECK(w.status == WitnessStatus::Verified);
  CHECK(w.bound == doctest::Approx((1.0 - std::exp(-1.0)) / std::abs(r3.gamma)));
  CHECK(w.bound == doctest::Approx(4.90).epsilon(0.01));
  CHECK(w.measured_norm >= 0.95 * w.bound);
  CHECK(w.sup_on_spectrum <= std::exp(-1.0) + 1e-9);
}

TEST_CASE("no witness for the semicircle") {
  CHECK_FALSE(cli_failure_witness(semicircle(), 3).found);
}

TEST_CASE("holomorphy probe") {
  const auto& space = semicircle();
  const double r = 0.5 * certified_radius(space);
  const HolomorphyReport sq = holomorphy_probe(functions::square(), space, r, 32, {0.0, cplx(0.2 * r, 0.1 * r)});
  CHECK(sq.max_residual <= 1e-10);
  const HolomorphyReport ab = holomorphy_probe(functions::absolute(), space, r, 64, {0.0, cplx(0.3 * r, 0.0)});
  CHECK(ab.max_residual <= 1e-6);
  CHECK(ab.derivative_residual <= 1e-4);
}

TEST_SUITE("known_limits") {
  TEST_CASE("near-support emergent eigenvalue at gamma = 0.13 + 0.026i") {
    const SpectrumMap m = spectrum_map({cplx(0.13, 0.026)}, indicator(), 0.0);
    CHECK(m.entries[0].classification == SpectrumClass::Emergent);
  }
}
