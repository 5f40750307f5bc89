#pragma once

// Branch-cut-correct square root and the closed-form fixed points of the
// two transformations M -> M^{-1}/(l^2-1) and M -> -(M + l)^{-1}.

#include <cmath>
#include <complex>
#include <string>

#include "nev/types.hpp"

namespace nev {

/// Points closer than this to a cut segment are rejected.
inline constexpr double kCutTolerance = 1e-12;

/// Distance from z to the real segment [-c, c].
template <typename Real>
Real distance_to_segment(const std::complex<Real>& z, Real c) {
  const Real x = std::abs(z.real());
  const Real dx = x > c ? x - c : Real(0);
  return std::hypot(dx, z.imag());
}

/// sqrt(z^2 - c^2) on the branch analytic off [-c, c] and asymptotic to z
/// at infinity. Realized as the product of two principal roots, so
/// Im result > 0 whenever Im z > 0.
template <typename Real>
std::complex<Real> sqrt_offcut(const std::complex<Real>& z, Real c) {
  if (!(c > Real(0))) throw DomainError("sqrt_offcut: half-width must be positive");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("sqrt_offcut: non-finite argument");
  if (distance_to_segment(z, c) < Real(kCutTolerance))
    throw DomainError("sqrt_offcut: argument on the cut [-" + std::to_string(c) + ", " +
                      std::to_string(c) + "]");
  return std::sqrt(z - c) * std::sqrt(z + c);
}

/// Fixed point of M -> M^{-1}/(z^2-1): -1/sqrt(z^2-1).
template <typename Real>
std::complex<Real> m0_gamma(const std::complex<Real>& z) {
  return -Real(1) / sqrt_offcut(z, Real(1));
}

/// Fixed point of M -> -(M + z)^{-1}: (-z + sqrt(z^2-4))/2.
///
/// Evaluated as -2/(z + sqrt(z^2-4)), which is the same root (the two
/// roots of m^2 + z m + 1 have product one) without the cancellation of
/// the textbook form at large |z|.
template <typename Real>
std::complex<Real> m0_gammahat(const std::complex<Real>& z) {
  return -Real(2) / (z + sqrt_offcut(z, Real(2)));
}

}  // namespace nev
