#pragma once

#include "gp/discretization.hpp"
#include "gp/types.hpp"

namespace gp {

// Largest singular value.
double spectral_norm(const CMatrix& m);

// Operator norm between the tagged inner-product spaces:
// || G_cod^{1/2} X G_dom^{-1/2} ||_2.
double operator_norm(const OperatorRep& x, const WeightedSpace& space);

// G^{1/2} X G^{-1/2} for a square weighted operator (unitary similarity).
CMatrix symmetrized(const OperatorRep& x, const WeightedSpace& space);

double relative_frobenius(const CMatrix& value, const CMatrix& reference);

// 2-norm condition number.
double condition_number(const CMatrix& m);

}  // namespace gp
