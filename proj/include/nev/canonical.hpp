#pragma once

// Canonical systems J x' = lambda H(t) x with step Hamiltonians, solved by
// exact per-interval transfer matrices; m_H is located by Weyl disks.

#include <Eigen/Dense>

#include "nev/kac.hpp"
#include "nev/types.hpp"

namespace nev {

using Matrix2c = Eigen::Matrix2cd;

/// Propagator over one interval of constant angle: I + lambda l (-J) e e^T,
/// e = (cos theta, -sin theta).
Matrix2c transfer_matrix(double theta, double l, Complex lambda);

struct WeylDiskEstimate {
  Complex lambda;
  Complex center;
  double radius = 0.0;      ///< +inf when the Weyl circle degenerates to a line
  double truncation_T = 0.0;
  bool converged = false;   ///< set by m_canonical only
  bool line = false;

  Complex m_value() const { return center; }
  double error_bound() const { return radius; }
  bool contains(Complex z, double slack = 1e-12) const {
    return !line && std::abs(z - center) <= radius + slack;
  }
};

/// Incremental propagation of x(0) = U(T)^{-1} x(T) across the intervals of
/// H, with renormalization and a determinant-drift check.
class WeylPropagator {
 public:
  WeylPropagator(const StepHamiltonian& h, Complex lambda);

  /// Propagate through intervals [next, j).
  void advance_to(Index j);
  Index position() const { return pos_; }
  double T() const;
  WeylDiskEstimate estimate() const;

 private:
  const StepHamiltonian& h_;
  Complex lambda_;
  Matrix2c v_ = Matrix2c::Identity();  // U^{-1} / exp(log_scale_)
  double log_scale_ = 0.0;
  Index pos_ = 0;
};

/// Weyl disk for the truncation [0, T]; T is snapped down to a breakpoint.
WeylDiskEstimate weyl_disk(const StepHamiltonian& h, Complex lambda, double t_trunc);

/// Doubles T from 1 until radius < tol or the covered range is exhausted.
WeylDiskEstimate m_canonical(const StepHamiltonian& h, Complex lambda, double tol);

}  // namespace nev
