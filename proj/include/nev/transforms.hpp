#pragma once

// Pointwise transformations of Nevanlinna values
//   Gamma:     M -> M^{-1} / (l^2 - 1)
//   Gammahat:  M -> -(M + l)^{-1}
// and the Gammahat iteration with its contraction monitor.

#include <complex>
#include <iosfwd>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "nev/herglotz.hpp"
#include "nev/types.hpp"

namespace nev {

inline constexpr double kIllConditioned = 1e12;

/// M^{-1} / (l^2 - 1). When `condition` is non-null it receives cond(M);
/// callers treat values above kIllConditioned as a warning.
template <typename Derived>
CMatrix gamma(const Eigen::MatrixBase<Derived>& m, Complex lambda, double* condition = nullptr) {
  static_assert(std::is_same_v<typename Derived::Scalar, Complex>, "complex matrix expected");
  const Complex shift = lambda * lambda - 1.0;
  if (shift == Complex(0.0)) throw DomainError("gamma: lambda = +-1");
  const CMatrix mv = m.eval();
  if (mv.rows() != mv.cols()) throw InvalidInput("gamma: square matrix expected");
  Eigen::JacobiSVD<CMatrix> svd(mv);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || !(smin > 1e-16 * s(0))) throw SingularError("gamma: singular value");
  if (condition) *condition = s(0) / smin;
  return mv.inverse() / shift;
}

/// -(M + l I)^{-1}. For a Nevanlinna value with Im l != 0 the shift is
/// always invertible and the result has norm <= 1/|Im l|.
template <typename Derived>
CMatrix gamma_hat(const Eigen::MatrixBase<Derived>& m, Complex lambda) {
  static_assert(std::is_same_v<typename Derived::Scalar, Complex>, "complex matrix expected");
  const CMatrix mv = m.eval();
  if (mv.rows() != mv.cols()) throw InvalidInput("gamma_hat: square matrix expected");
  const CMatrix shifted = mv + lambda * CMatrix::Identity(mv.rows(), mv.cols());
  Eigen::PartialPivLU<CMatrix> lu(shifted);
  if (!(lu.rcond() > 1e-15))
    throw SingularError("gamma_hat: M + lambda is singular (value is not Nevanlinna)");
  return -lu.inverse();
}

/// Per-step record of M_{k+1} = gammahat(M_k) at a fixed lambda.
struct IterationTrace {
  Complex lambda;
  std::vector<CMatrix> values;     ///< M_1, M_2, ...
  std::vector<double> residuals;   ///< ||M_k - M_0(lambda) I||
  std::vector<double> ratios;      ///< residual_{k+1} / residual_k (0 when the denominator is 0)

  /// 1/|Im lambda|^2, the geometric rate guaranteed when |Im lambda| > 1.
  double contraction_bound() const;

  /// Every ratio with both residuals above `floor` obeys the bound (+1e-10).
  /// Vacuously true when |Im lambda| <= 1, where the bound is not asserted.
  bool contraction_holds(double floor = 1e-14) const;

  double max_ratio(double floor = 1e-14) const;
};

/// Iterate starting from the value of a realized function.
IterationTrace iterate_gamma_hat(const RealizedFunction& f, Complex lambda, Index steps);

/// Iterate starting from an explicit matrix value (M_1 = gammahat(start)).
IterationTrace iterate_gamma_hat(const CMatrix& start, Complex lambda, Index steps);

/// Applies gammahat k times to M_0(lambda) I_d and returns the deviation
/// from the start.
double fixed_point_residual_all_powers(Complex lambda, Index k, Index d = 1);

/// CSV columns: n, re(value_00), im(value_00), residual, ratio.
void write_trace_csv(std::ostream& os, const IterationTrace& trace);

}  // namespace nev
