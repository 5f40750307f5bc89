#include "nev/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nev {

namespace {

constexpr double kDriftTol = 1e-9;

// J e e^T with J = [[0,-1],[1,0]] and e = (cos theta, -sin theta).
// Angles are read clockwise: with the counterclockwise reading the Kac
// Hamiltonian of (a_k, b_k) carries the m-function of (-a_k, b_k). Axis
// angles (all of H_0) are unaffected.
Eigen::Matrix2d j_projector(double theta) {
  const double c = std::cos(theta);
  const double s = -std::sin(theta);
  Eigen::Matrix2d m;
  m << -s * c, -s * s, c * c, c * s;
  return m;
}

void require_off_axis(Complex lambda) {
  if (lambda.imag() == 0.0) throw DomainError("canonical system: Im lambda must be nonzero");
}

// Index of the largest breakpoint <= t (at least 1).
Index snap_down(const StepHamiltonian& h, double t) {
  const auto& bp = h.breakpoints();
  if (!(t >= bp[1]))
    throw DomainError("truncation T = " + std::to_string(t) +
                      " precedes the first breakpoint " + std::to_string(bp[1]));
  const auto it = std::upper_bound(bp.begin(), bp.end(), t);
  return static_cast<Index>(it - bp.begin()) - 1;
}

}  // namespace

Matrix2c transfer_matrix(double theta, double l, Complex lambda) {
  if (!(l > 0.0)) throw InvalidInput("transfer_matrix: length must be positive");
  return Matrix2c::Identity() - (lambda * l) * j_projector(theta).cast<Complex>();
}

WeylPropagator::WeylPropagator(const StepHamiltonian& h, Complex lambda)
    : h_(h), lambda_(lambda) {
  require_off_axis(lambda);
}

double WeylPropagator::T() const { return h_.breakpoints()[static_cast<std::size_t>(pos_)]; }

void WeylPropagator::advance_to(Index j) {
  if (j < pos_ || j > h_.intervals()) throw InvalidInput("WeylPropagator: bad target interval");
  for (; pos_ < j; ++pos_) {
    const auto k = static_cast<std::size_t>(pos_);
    const double l = h_.breakpoints()[k + 1] - h_.breakpoints()[k];
    // U_j^{-1} = I + lambda l J e e^T, applied on the right.
    const Matrix2c inv = Matrix2c::Identity() + (lambda_ * l) * j_projector(h_.thetas()[k]).cast<Complex>();
    v_ = v_ * inv;
    const double scale = v_.cwiseAbs().maxCoeff();
    v_ /= scale;
    log_scale_ += std::log(scale);
    const Complex expected = std::exp(-2.0 * log_scale_);
    if (std::abs(v_.determinant() - expected) > kDriftTol)
      throw Error("canonical system: determinant drift beyond " + std::to_string(kDriftTol) +
                  " at t = " + std::to_string(h_.breakpoints()[k + 1]));
  }
}

// x(0) = V (1, tau)^T for boundary rays x(T) = (1, tau), tau real (plus
// tau = inf). m = (s tau + r) / (q tau + p) sweeps the Weyl circle.
WeylDiskEstimate WeylPropagator::estimate() const {
  WeylDiskEstimate e;
  e.lambda = lambda_;
  e.truncation_T = T();
  const Complex p = v_(0, 0), q = v_(0, 1), r = v_(1, 0), s = v_(1, 1);
  const Complex kappa = q * std::conj(p) - std::conj(q) * p;
  if (std::abs(kappa) == 0.0 || !std::isfinite(std::log(std::abs(kappa)))) {
    e.line = true;
    e.radius = std::numeric_limits<double>::infinity();
    e.center = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    return e;
  }
  e.center = (s * std::conj(p) - r * std::conj(q)) / kappa;
  e.radius = std::exp(-2.0 * log_scale_ - std::log(std::abs(kappa)));
  return e;
}

WeylDiskEstimate weyl_disk(const StepHamiltonian& h, Complex lambda, double t_trunc) {
  WeylPropagator prop(h, lambda);
  prop.advance_to(snap_down(h, t_trunc));
  return prop.estimate();
}

WeylDiskEstimate m_canonical(const StepHamiltonian& h, Complex lambda, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("m_canonical: tol must be positive");
  WeylPropagator prop(h, lambda);
  double target = std::max(1.0, h.breakpoints()[1]);
  for (;;) {
    prop.advance_to(std::max(snap_down(h, target), prop.position()));
    WeylDiskEstimate e = prop.estimate();
    if (!e.line && e.radius < tol) {
      e.converged = true;
      return e;
    }
    if (prop.position() == h.intervals()) return e;
    target = std::min(2.0 * target, h.end());
  }
}

}  // namespace nev
