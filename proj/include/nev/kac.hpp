#pragma once

// Step Hamiltonians of canonical systems and the Kac construction that turns
// scalar Jacobi coefficients into a trace-normed rank-one step Hamiltonian
// with the same m-function.

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nev/jacobi.hpp"
#include "nev/types.hpp"

namespace nev {

/// H(t) = e(theta_j) e(theta_j)^T on [t_j, t_{j+1}), e(theta) = (cos, sin).
/// Angles are stored unreduced so that the increasing angle function is
/// observable.
class StepHamiltonian {
 public:
  /// breakpoints t_0 = 0 < t_1 < ... < t_m, one angle per interval.
  StepHamiltonian(std::vector<double> breakpoints, std::vector<double> thetas);

  Index intervals() const { return static_cast<Index>(thetas_.size()); }
  double end() const { return breakpoints_.back(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& thetas() const { return thetas_; }
  double length(Index j) const;

  /// Interval index j with t_j <= t < t_{j+1}. DomainError outside [0, end).
  Index interval_at(double t) const;

  /// First interval is [0, 1) with angle pi/2, as every Kac output is.
  bool kac_normalized() const;

  /// Leading m intervals.
  StepHamiltonian truncated(Index m) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> thetas_;
};

/// Kac recursion for scalar coefficients a_k, b_k > 0. Uses a_0..a_{m-2}
/// and b_0..b_{m-2}; returns the first m intervals.
StepHamiltonian kac_algorithm(const std::vector<double>& a, const std::vector<double>& b,
                              Index m);

/// Same, reading the coefficients of a scalar Jacobi matrix (Unsupported for
/// d > 1).
StepHamiltonian kac_algorithm(const BlockJacobi& j, Index m);

/// [[cos^2, cos sin], [cos sin, sin^2]] of the angle.
Eigen::Matrix2d rank_one_projector(double theta);

/// H(t); DomainError past the last breakpoint.
Eigen::Matrix2d evaluate_H(const StepHamiltonian& h, double t);

/// Unit intervals with angles (j+1) pi/2.
StepHamiltonian hamiltonian_H0(Index m);

/// Coefficients of the Jacobi matrix whose m-function is the n-th
/// Gammahat iterate: n leading zeros / ones followed by a, b.
std::pair<std::vector<double>, std::vector<double>> shifted_coefficients(
    const std::vector<double>& a, const std::vector<double>& b, Index n);

/// Hamiltonian of the n-th Gammahat iterate: H_0 on [0, n+1), then the
/// intervals [t_j + n, t_{j+1} + n) of H (j >= 1) with angles theta_j + n pi/2.
StepHamiltonian hamiltonian_Hn(const StepHamiltonian& h, Index n);

/// Hamiltonian of Gammahat(m_H): H_0 on [0, 2), I - H(t - 1) on [2, inf).
StepHamiltonian gammahat_hamiltonian(const StepHamiltonian& h);

}  // namespace nev
