#pragma once

// Finite truncations of block Jacobi matrices and their m-functions
// (top-left block of the resolvent).

#include <vector>

#include "nev/types.hpp"

namespace nev {

/// N-block truncation of a Hermitian block-tridiagonal matrix: diagonal
/// blocks a_0..a_{N-1}, off-diagonal blocks b_0..b_{N-2}. Block (k, k+1)
/// holds b_k and block (k+1, k) holds b_k*.
class BlockJacobi {
 public:
  BlockJacobi(std::vector<CMatrix> a, std::vector<CMatrix> b);

  /// d = 1 convenience constructor.
  static BlockJacobi scalar(const std::vector<double>& a, const std::vector<double>& b);

  Index block_dim() const { return d_; }
  Index length() const { return static_cast<Index>(a_.size()); }
  const std::vector<CMatrix>& diagonal() const { return a_; }
  const std::vector<CMatrix>& off_diagonal() const { return b_; }

  /// Real scalar coefficients (throws Unsupported unless d = 1).
  std::vector<double> scalar_diagonal() const;
  std::vector<double> scalar_off_diagonal() const;

  /// Dense (N d) x (N d) matrix.
  CMatrix dense() const;

  /// Leading n-block truncation, 1 <= n <= N.
  BlockJacobi truncated(Index n) const;

 private:
  std::vector<CMatrix> a_;
  std::vector<CMatrix> b_;
  Index d_ = 0;
};

/// Chebyshev first-kind matrix: a_k = 0, b_0 = I/sqrt(2), b_k = I/2.
BlockJacobi build_J0(Index d, Index n);

/// Free discrete Schroedinger matrix: a_k = 0, b_k = I.
BlockJacobi build_Jhat0(Index d, Index n);

/// Top-left d x d block of (J - l)^{-1} by block-tridiagonal elimination
/// (linear in N). A solve whose residual exceeds 1e-8 ||rhs|| is reported
/// as PoleError.
CMatrix m_resolvent(const BlockJacobi& j, Complex lambda);

/// Same quantity from the backward J-fraction
/// m_{N-1} = -(l - a_{N-1})^{-1},  m_k = -(l - a_k + b_k m_{k+1} b_k*)^{-1}.
CMatrix m_cf(const BlockJacobi& j, Complex lambda);

enum class ChebyshevKind { First = 1, Second = 2 };

/// Gauss-Chebyshev quadrature of the Cauchy transforms
///   first kind:  (1/pi)   int_{-1}^{1} (t - l)^{-1} (1 - t^2)^{-1/2} dt
///   second kind: (1/2pi)  int_{-2}^{2} (t - l)^{-1} sqrt(4 - t^2) dt
Complex quadrature_m0(Complex lambda, Index nodes, ChebyshevKind kind);

}  // namespace nev
