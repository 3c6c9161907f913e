#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gp {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Which inner product a vector or operator side carries.
enum class SpaceTag { Flat, Weighted };

const char* to_string(SpaceTag tag);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: unknown names, out-of-range parameters, grid violations.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class TagMismatch : public Error {
 public:
  using Error::Error;
};

// 1 + 2*pi*i*gamma*P+rho vanishes (or gamma leaves the certified disk).
class SingularCoupling : public Error {
 public:
  using Error::Error;
};

// A numerical guard tripped (conditioning, non-convergence, contour too close).
class NumericalGuard : public Error {
 public:
  using Error::Error;
};

}  // namespace gp
