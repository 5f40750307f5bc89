#pragma once

#include <Eigen/Dense>

#include "nev/types.hpp"

namespace nev {

/// Largest singular value.
template <typename Derived>
double op_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(
      m.eval());
  return svd.singularValues()(0);
}

/// Condition number in the operator norm (infinity for singular input).
double condition_number(const CMatrix& m);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const CMatrix& m);

/// Scale-relative PSD floor: min eig >= -rel_tol * (1 + ||G||).
inline constexpr double kPsdTolerance = 1e-10;
bool is_psd(const CMatrix& g, double rel_tol = kPsdTolerance);

/// ||M - M*|| (max-abs entry).
double hermitian_defect(const CMatrix& m);

/// Number of singular values above rel_tol times the largest one.
Index numerical_rank(const CMatrix& m, double rel_tol = 1e-10);

/// Orthonormal basis (columns) of the range of m, same rank convention.
CMatrix range_basis(const CMatrix& m, double rel_tol = 1e-10);

/// Orthonormal basis of the orthogonal complement of the column span of an
/// orthonormal n x d matrix.
CMatrix orthogonal_complement(const CMatrix& basis);

}  // namespace nev
