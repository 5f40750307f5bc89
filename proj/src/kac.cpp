#include "nev/kac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace nev {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

StepHamiltonian::StepHamiltonian(std::vector<double> breakpoints, std::vector<double> thetas)
    : breakpoints_(std::move(breakpoints)), thetas_(std::move(thetas)) {
  if (thetas_.empty()) throw InvalidInput("step Hamiltonian needs at least one interval");
  if (breakpoints_.size() != thetas_.size() + 1)
    throw InvalidInput("step Hamiltonian needs one more breakpoint than angles");
  if (breakpoints_.front() != 0.0) throw InvalidInput("first breakpoint must be 0");
  for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j)
    if (!(breakpoints_[j + 1] > breakpoints_[j]) || !std::isfinite(breakpoints_[j + 1]))
      throw InvalidInput("breakpoints must be finite and strictly increasing");
  for (double th : thetas_)
    if (!std::isfinite(th)) throw InvalidInput("angles must be finite");
}

double StepHamiltonian::length(Index j) const {
  const auto k = static_cast<std::size_t>(j);
  return breakpoints_.at(k + 1) - breakpoints_.at(k);
}

Index StepHamiltonian::interval_at(double t) const {
  if (!(t >= 0.0) || !(t < end()))
    throw DomainError("t = " + std::to_string(t) + " outside the covered range [0, " +
                      std::to_string(end()) + ")");
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return static_cast<Index>(it - breakpoints_.begin()) - 1;
}

bool StepHamiltonian::kac_normalized() const {
  return breakpoints_.size() >= 2 && breakpoints_[1] == 1.0 && thetas_.front() == kHalfPi;
}

StepHamiltonian StepHamiltonian::truncated(Index m) const {
  if (m < 1 || m > intervals()) throw InvalidInput("truncation out of range");
  const auto um = static_cast<std::size_t>(m);
  return StepHamiltonian({breakpoints_.begin(), breakpoints_.begin() + static_cast<long>(um) + 1},
                         {thetas_.begin(), thetas_.begin() + static_cast<long>(um)});
}

// With c_j := cot(theta_{j+1} - theta_j) the recursion reads
//   c_0 = cot(arctan a_0 + pi/2) = -a_0,   c_j = -a_j l_j - c_{j-1},
//   theta_{j+1} = theta_j + (pi/2 - arctan c_j)   (the root in (theta_j, theta_j + pi)),
//   l_{j+1} = 1 / (l_j b_j^2 sin^2(theta_{j+1} - theta_j)) = (1 + c_j^2) / (l_j b_j^2),
// so the cotangent of the previous step is carried exactly instead of being
// recomputed from rounded angle differences.
StepHamiltonian kac_algorithm(const std::vector<double>& a, const std::vector<double>& b,
                              Index m) {
  if (m < 1) throw InvalidInput("kac_algorithm: at least one interval required");
  const auto need = static_cast<std::size_t>(m - 1);
  if (a.size() < need || b.size() < need)
    throw InvalidInput("kac_algorithm: " + std::to_string(m) + " intervals need " +
                       std::to_string(need) + " coefficients a_k and b_k");
  std::vector<double> t{0.0, 1.0};
  std::vector<double> theta{kHalfPi};
  double l = 1.0;  // l_0
  double c = 0.0;
  for (std::size_t j = 0; j < need; ++j) {
    if (!(b[j] > 0.0)) throw InvalidInput("kac_algorithm: b_k must be positive");
    if (!std::isfinite(a[j])) throw InvalidInput("kac_algorithm: a_k must be finite");
    double next;
    if (j == 0) {
      c = -a[0];
      next = std::atan(a[0]) + std::numbers::pi;
    } else {
      c = -a[j] * l - c;
      next = theta.back() + (kHalfPi - std::atan(c));
    }
    // sin² of the increment is 1/(1+c²); it vanishes only once c overflows.
    const double sin2 = 1.0 / (1.0 + c * c);
    if (!(sin2 > 0.0) || !std::isfinite(c))
      throw InvalidInput("kac_algorithm: degenerate step (sin of the angle increment vanishes)");
    l = 1.0 / (l * b[j] * b[j] * sin2);
    if (!std::isfinite(l) || !(l > 0.0))
      throw InvalidInput("kac_algorithm: interval length left the floating-point range");
    theta.push_back(next);
    t.push_back(t.back() + l);
  }
  return StepHamiltonian(std::move(t), std::move(theta));
}

StepHamiltonian kac_algorithm(const BlockJacobi& j, Index m) {
  if (j.block_dim() != 1) throw Unsupported("kac_algorithm: block Jacobi input (d > 1)");
  return kac_algorithm(j.scalar_diagonal(), j.scalar_off_diagonal(), m);
}

Eigen::Matrix2d rank_one_projector(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d h;
  h << c * c, c * s, c * s, s * s;
  return h;
}

Eigen::Matrix2d evaluate_H(const StepHamiltonian& h, double t) {
  return rank_one_projector(h.thetas()[static_cast<std::size_t>(h.interval_at(t))]);
}

StepHamiltonian hamiltonian_H0(Index m) {
  if (m < 1) throw InvalidInput("hamiltonian_H0: at least one interval required");
  std::vector<double> t{0.0};
  std::vector<double> theta;
  double angle = kHalfPi;
  for (Index j = 0; j < m; ++j) {
    theta.push_back(angle);
    t.push_back(t.back() + 1.0);
    angle += kHalfPi;
  }
  return StepHamiltonian(std::move(t), std::move(theta));
}

std::pair<std::vector<double>, std::vector<double>> shifted_coefficients(
    const std::vector<double>& a, const std::vector<double>& b, Index n) {
  if (n < 0) throw InvalidInput("shift must be nonnegative");
  std::vector<double> an(static_cast<std::size_t>(n), 0.0);
  std::vector<double> bn(static_cast<std::size_t>(n), 1.0);
  an.insert(an.end(), a.begin(), a.end());
  bn.insert(bn.end(), b.begin(), b.end());
  return {std::move(an), std::move(bn)};
}

StepHamiltonian hamiltonian_Hn(const StepHamiltonian& h, Index n) {
  if (n < 1) throw InvalidInput("hamiltonian_Hn: n must be at least 1");
  if (!h.kac_normalized())
    throw InvalidInput("hamiltonian_Hn: H must start with [0, 1) at angle pi/2");
  const StepHamiltonian prefix = hamiltonian_H0(n + 1);
  std::vector<double> t = prefix.breakpoints();
  std::vector<double> theta = prefix.thetas();
  const double shift = static_cast<double>(n);
  const double turn = shift * kHalfPi;
  for (Index j = 1; j < h.intervals(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    theta.push_back(h.thetas()[uj] + turn);
    t.push_back(h.breakpoints()[uj + 1] + shift);
  }
  return StepHamiltonian(std::move(t), std::move(theta));
}

StepHamiltonian gammahat_hamiltonian(const StepHamiltonian& h) {
  if (h.end() <= 1.0) throw InvalidInput("gammahat_hamiltonian: H must extend past t = 1");
  const StepHamiltonian prefix = hamiltonian_H0(2);
  std::vector<double> t = prefix.breakpoints();
  std::vector<double> theta = prefix.thetas();
  // I - e e^T is the projector onto the orthogonal direction: angle + pi/2.
  const Index first = h.interval_at(1.0);
  for (Index j = first; j < h.intervals(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    theta.push_back(h.thetas()[uj] + kHalfPi);
    t.push_back(h.breakpoints()[uj + 1] + 1.0);
  }
  return StepHamiltonian(std::move(t), std::move(theta));
}

}  // namespace nev
