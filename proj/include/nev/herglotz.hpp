#pragma once

// Matrix-valued Nevanlinna functions given by finite data: either an affine
// part plus a finite discrete measure, or a resolvent realization
// K*(T - l)^{-1} K with Hermitian T.

#include <cstdint>
#include <random>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nev/types.hpp"

namespace nev {

/// Point mass `weight` placed at the real point `t`.
struct Atom {
  double t = 0.0;
  CMatrix weight;
};

/// M(l) = A + B l + sum_j W_j ((t_j - l)^{-1} - t_j/(t_j^2 + 1)).
struct DiscreteMeasure {
  CMatrix A;
  CMatrix B;
  std::vector<Atom> atoms;
};

/// M(l) = K* (T - l)^{-1} K, T Hermitian n x n, K n x d.
struct Realization {
  CMatrix T;
  CMatrix K;
};

/// Immutable finite-data Nevanlinna function. The checked factories enforce
/// the class invariants; `unchecked` exists to build deliberately invalid
/// inputs for negative tests and for tools that want to report problems
/// instead of refusing them.
class RealizedFunction {
 public:
  static RealizedFunction measure(CMatrix A, CMatrix B, std::vector<Atom> atoms);
  static RealizedFunction realization(CMatrix T, CMatrix K);
  static RealizedFunction zero(Index d);
  static RealizedFunction unchecked(DiscreteMeasure m);
  static RealizedFunction unchecked(Realization r);

  bool is_measure() const { return std::holds_alternative<DiscreteMeasure>(data_); }
  bool is_realization() const { return !is_measure(); }
  Index dim() const { return dim_; }

  const DiscreteMeasure& as_measure() const;
  const Realization& as_realization() const;

  /// Human-readable list of violated invariants; empty when valid.
  std::vector<std::string> violations() const;

  /// Eigen-decomposition of T (realization variant): eigenvalues and U* K.
  const RVector& spectrum() const { return eigenvalues_; }
  const CMatrix& spectral_K() const { return spectral_K_; }

 private:
  explicit RealizedFunction(DiscreteMeasure m);
  explicit RealizedFunction(Realization r);

  std::variant<DiscreteMeasure, Realization> data_;
  Index dim_ = 0;
  RVector eigenvalues_;
  CMatrix spectral_K_;
};

/// M(l). Throws PoleError when l sits on an atom or an eigenvalue of T.
CMatrix evaluate(const RealizedFunction& f, Complex lambda);

/// M'(l), computed from the finite representation (sum of squared
/// resolvents).
CMatrix evaluate_derivative(const RealizedFunction& f, Complex lambda);

/// C = -lim_{y->inf} iy M(iy). Throws UnboundedLimit when the linear term or
/// the constant term at infinity is nonzero.
CMatrix asymptotic_C(const RealizedFunction& f);

/// M(l) = E + K*(T - l)^{-1} K with diagonal T for the measure variant.
/// Throws UnboundedLimit when B != 0.
struct ResolventForm {
  CMatrix E;
  CMatrix T;
  CMatrix K;
};
ResolventForm resolvent_form(const RealizedFunction& f);

/// Measure variant with the same values: atoms at the eigenvalues of T
/// (clustered within 1e-12) with weights K* P_j K.
RealizedFunction to_measure(const RealizedFunction& f);

/// Sample points (all off the real axis) with optional probe vectors.
struct SampleSet {
  std::vector<Complex> points;
  std::vector<CVector> vectors;  // empty, or one per point
};

/// Gram matrix of the Nevanlinna kernel (M(l) - M(m)*)/(l - conj m).
///
/// With probe vectors the result is n x n with entries <K(l_k,l_l) f_l, f_k>;
/// without them it is the (n d) x (n d) block Gram. Pairs with
/// l_k = conj l_l use the limit M'(l_k).
CMatrix nevanlinna_gram(const RealizedFunction& f, const SampleSet& s);

/// Gram matrix of the interval kernel
/// [(1 - l^2) M(l) - (1 - conj(x)^2) M(x)* - (l - conj x) I] / (l - conj x),
/// which is PSD iff the data is consistent with a compressed resolvent of a
/// selfadjoint contraction. Throws DomainError on l = conj x collisions and
/// on points of [-1, 1].
CMatrix class_n0_interval_gram(const RealizedFunction& f, const SampleSet& s);

struct RandomOptions {
  bool contraction = true;  ///< spectrum of T inside [-1, 1]
  bool isometric = false;   ///< K* K = I (requires n >= d)
};

/// Deterministic pseudo-random realization variant.
RealizedFunction random_nevanlinna(std::uint64_t seed, Index d, Index n,
                                   RandomOptions options = {});

/// Portable uniform generator shared by the random constructors: the same
/// seed gives the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();                       ///< [0, 1)
  double uniform(double lo, double hi);   ///< [lo, hi)
  Complex complex_uniform();              ///< re, im in [-1, 1)
  CMatrix complex_matrix(Index rows, Index cols);
  CMatrix hermitian(Index n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace nev
