#pragma once

// Realizations of Nevanlinna functions as compressed resolvents
// P_M (A - l)^{-1} |_M: defect operators, the contraction realizing
// M^{-1}/(l^2-1), the chain operators realizing the Gammahat iterates, the
// Schur-Frobenius resolvent formulas and M-simplicity.

#include "nev/herglotz.hpp"
#include "nev/types.hpp"

namespace nev {

/// Hermitian T on C^n together with an orthonormal n x d basis of the
/// distinguished subspace M.
struct SubspaceRealization {
  CMatrix T;
  CMatrix basis;

  Index dim() const { return basis.cols(); }
  Index space_dim() const { return T.rows(); }

  /// Checks T = T* and basis* basis = I (1e-12); throws InvalidInput.
  void validate() const;

  /// M embedded as the leading d coordinates of C^n.
  static SubspaceRealization leading(CMatrix T, Index d);
};

inline constexpr double kContractionTol = 1e-12;
/// Relative floor on 1 - t^2 (and on singular values) below which a
/// direction counts as zero.
inline constexpr double kRankTol = 1e-10;

/// D_T = (I - T^2)^{1/2} and an orthonormal basis of ran D_T (eigenvectors
/// with 1 - t^2 > kRankTol * max(1 - t^2)). Throws InvalidInput when
/// ||T|| > 1 + 1e-12.
struct DefectOperator {
  CMatrix D;
  CMatrix range;
};
DefectOperator defect_operator(const CMatrix& T);

/// Selfadjoint contraction on M (+) ran D_T with blocks
///   [ -P_M T|_M    P_M D_T ]
///   [  D_T|_M      T       ]
/// whose M-resolvent is (l^2-1)^{-1} [P_M (T - l)^{-1}|_M]^{-1}.
/// M occupies the leading d coordinates of the result.
SubspaceRealization bold_T(const SubspaceRealization& r);

/// basis* (A - l)^{-1} basis by a dense LU solve. PoleError when the solve
/// residual exceeds 1e-8.
CMatrix compressed_resolvent(const CMatrix& A, const CMatrix& basis, Complex lambda);

/// Same quantity for A = [[D, K*], [K, T]] on M (+) K from the Schur
/// complement: -(-D + K*(T - l)^{-1} K + l)^{-1}.
CMatrix compressed_resolvent_schur(const CMatrix& D, const CMatrix& K, const CMatrix& T,
                                   Complex lambda);

/// Full resolvent of [[D, K*], [K, T]] assembled from its four
/// Schur-Frobenius blocks with V(l) = l - D + K*(T - l)^{-1} K.
CMatrix schur_frobenius_inverse(const CMatrix& D, const CMatrix& K, const CMatrix& T,
                                Complex lambda);

/// Chain operator A_n on M^n (+) H:
///   A_1 = [[0, K*], [K, That]],  A_{k+1} = [[0, P*], [P, A_k]],
/// P the embedding of M as the leading block. `assembled` is the dense
/// (n d + h) square matrix.
struct ChainOperator {
  Index n = 0;
  CMatrix K;
  CMatrix That;
  CMatrix assembled;

  Index block_dim() const { return K.cols(); }
  SubspaceRealization realization() const;
};

inline constexpr Index kMaxChainDim = 2000;

ChainOperator chain_A(const CMatrix& K, const CMatrix& That, Index n);

/// A_{n+1} from A_n by prepending one copy of M.
ChainOperator extend(const ChainOperator& a);

struct SimplicityReport {
  bool is_simple = false;
  Index krylov_rank = 0;
};

/// Rank of the block Krylov space span{T^k M}. Uses block Arnoldi with
/// reorthogonalization, so the rank is insensitive to the growth of T^k.
SimplicityReport simplicity_check(const SubspaceRealization& r);

/// Realization variant of -(F(l) + l)^{-1}:
/// T = [[-E, K*], [K, T_F]], K = [I; 0] for F = E + K*(T_F - l)^{-1} K.
RealizedFunction realize_gamma_hat(const RealizedFunction& f);

/// A realization variant with K*K = I read as a subspace realization.
SubspaceRealization as_subspace(const RealizedFunction& f);

}  // namespace nev
