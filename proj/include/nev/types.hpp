#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nev {

using Real = double;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument lies on (or within 1e-12 of) a branch cut or outside the
/// domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Spectral parameter hits (or numerically sits on) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Matrix that must be inverted is singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Input violates a structural invariant (hermiticity, contraction, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Requested limit does not exist as a bounded operator.
class UnboundedLimit : public Error {
 public:
  using Error::Error;
};

/// Operation is not defined for the given input (e.g. block Kac).
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace nev
