#include "gp/linalg.hpp"

#include <limits>

#include <Eigen/SVD>

namespace gp {

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix symmetrized(const OperatorRep& x, const WeightedSpace& space) {
  const RVector gd = space.gram(x.domain).cwiseSqrt();
  const RVector gc = space.gram(x.codomain).cwiseSqrt();
  if (x.matrix.cols() != gd.size() || x.matrix.rows() != gc.size()) {
    throw TagMismatch("operator shape does not match its tags");
  }
  return gc.asDiagonal() * x.matrix * gd.cwiseInverse().asDiagonal();
}

double operator_norm(const OperatorRep& x, const WeightedSpace& space) {
  return spectral_norm(symmetrized(x, space));
}

double relative_frobenius(const CMatrix& value, const CMatrix& reference) {
  const double ref = reference.norm();
  const double diff = (value - reference).norm();
  return ref > 0.0 ? diff / ref : diff;
}

double condition_number(const CMatrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace gp
