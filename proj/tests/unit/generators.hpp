#pragma once

// Seeded generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>

#include <json.hpp>

#include "gp/density.hpp"
#include "gp/discretization.hpp"
#include "gp/types.hpp"

namespace gp::testgen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>()(engine_); }
  cplx complex_normal() { return {normal(), normal()}; }
  cplx in_disk(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * kPi));
  }

  CVector vector(Index n) {
    CVector v(n);
    for (Index k = 0; k < n; ++k) v(k) = complex_normal();
    return v;
  }

  // One of the library densities with randomized parameters; support stays inside [-1.5, 1.5].
  SpectralDensity density() {
    switch (integer(0, 3)) {
      case 0:
        return density_library("semicircle", {{"center", uniform(-0.3, 0.3)}, {"radius", uniform(0.5, 1.0)}});
      case 1: {
        const double lo = uniform(-1.2, -0.2);
        return density_library("indicator", {{"lo", lo}, {"hi", lo + uniform(0.4, 1.2)}, {"height", uniform(0.2, 2.0)}});
      }
      case 2:
        return density_library("cosine_bump", {{"center", uniform(-0.3, 0.3)}, {"half_width", uniform(0.4, 1.0)}});
      default: {
        nlohmann::json samples = nlohmann::json::array();
        const int n = integer(3, 9);
        for (int k = 0; k < n; ++k) samples.push_back(k == 0 || k == n - 1 ? 0.0 : uniform(0.0, 1.5));
        return density_library("table", {{"lo", -1.0}, {"hi", 1.0}, {"samples", samples}});
      }
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline double max_abs(const CVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace gp::testgen
