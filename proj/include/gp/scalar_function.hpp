#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gp/types.hpp"

namespace gp {

// A function phi used in the calculus. `eval` is called on real points for
// multiplication operators and on (possibly complex) eigenvalues by the
// oracle. `matrix_eval`, when set, evaluates phi on a square matrix directly
// and is used when an eigenbasis is too ill-conditioned.
struct ScalarFunction {
  std::string name;
  std::function<cplx(cplx)> eval;
  std::function<CMatrix(const CMatrix&)> matrix_eval;
  bool real_valued = true;

  cplx operator()(cplx z) const { return eval(z); }
  cplx operator()(double t) const { return eval(cplx(t, 0.0)); }
};

namespace functions {

ScalarFunction identity();
ScalarFunction square();
ScalarFunction absolute();
ScalarFunction exponential();
ScalarFunction constant(cplx value);
// exp(coeff * (z - center))
ScalarFunction exp_affine(cplx coeff, cplx center);
// exp(-tau * (z - center)^2)
ScalarFunction gaussian(double tau, cplx center);
// Piecewise-linear interpolation of (nodes, values); zero outside the nodes.
ScalarFunction table(std::vector<double> nodes, std::vector<double> values);

// Lookup by the names accepted in experiment configs.
ScalarFunction by_name(const std::string& name);

}  // namespace functions
}  // namespace gp
