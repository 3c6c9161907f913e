#include "gp/scalar_function.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace gp {

const char* to_string(SpaceTag tag) {
  return tag == SpaceTag::Flat ? "FLAT" : "WEIGHTED";
}

namespace functions {

ScalarFunction identity() {
  return {"identity", [](cplx z) { return z; }, [](const CMatrix& m) { return CMatrix(m); }, true};
}

ScalarFunction square() {
  return {"square", [](cplx z) { return z * z; }, [](const CMatrix& m) { return CMatrix(m * m); },
          true};
}

ScalarFunction absolute() {
  // Not holomorphic: complex arguments get the modulus, which is only
  // meaningful on the real axis.
  return {"abs", [](cplx z) { return cplx(std::abs(z), 0.0); }, nullptr, true};
}

ScalarFunction exponential() {
  return {"exp", [](cplx z) { return std::exp(z); },
          [](const CMatrix& m) { return CMatrix(m.exp()); }, true};
}

ScalarFunction constant(cplx value) {
  return {"constant", [value](cplx) { return value; },
          [value](const CMatrix& m) {
            return CMatrix(value * CMatrix::Identity(m.rows(), m.cols()));
          },
          value.imag() == 0.0};
}

ScalarFunction exp_affine(cplx coeff, cplx center) {
  return {"exp_affine", [coeff, center](cplx z) { return std::exp(coeff * (z - center)); },
          [coeff, center](const CMatrix& m) {
            CMatrix shifted = coeff * (m - center * CMatrix::Identity(m.rows(), m.cols()));
            return CMatrix(shifted.exp());
          },
          false};
}

ScalarFunction gaussian(double tau, cplx center) {
  return {"gaussian",
          [tau, center](cplx z) { return std::exp(-tau * (z - center) * (z - center)); },
          [tau, center](const CMatrix& m) {
            CMatrix shifted = m - center * CMatrix::Identity(m.rows(), m.cols());
            CMatrix arg = -tau * (shifted * shifted);
            return CMatrix(arg.exp());
          },
          center.imag() == 0.0};
}

ScalarFunction table(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() != values.size() || nodes.size() < 2) {
    throw InvalidArgument("phi table needs matching nodes/values with at least two entries");
  }
  if (!std::is_sorted(nodes.begin(), nodes.end()) ||
      std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
    throw InvalidArgument("phi table nodes must be strictly increasing");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("phi table has non-finite values");
  }
  auto eval = [nodes = std::move(nodes), values = std::move(values)](cplx z) {
    const double t = z.real();
    if (t < nodes.front() || t > nodes.back()) return cplx(0.0, 0.0);
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    if (it == nodes.end()) return cplx(values.back(), 0.0);
    const auto k = static_cast<std::size_t>(it - nodes.begin());
    const double s = (t - nodes[k - 1]) / (nodes[k] - nodes[k - 1]);
    return cplx((1.0 - s) * values[k - 1] + s * values[k], 0.0);
  };
  return {"table", eval, nullptr, true};
}

ScalarFunction by_name(const std::string& name) {
  if (name == "identity" || name == "t") return identity();
  if (name == "square" || name == "t2") return square();
  if (name == "abs") return absolute();
  if (name == "exp") return exponential();
  if (name == "one" || name == "constant") return constant(1.0);
  throw InvalidArgument("unknown phi name '" + name + "'");
}

}  // namespace functions
}  // namespace gp
