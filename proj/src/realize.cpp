#include "nev/realize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nev/linalg.hpp"

namespace nev {

void SubspaceRealization::validate() const {
  if (T.rows() != T.cols()) throw InvalidInput("T must be square");
  if (basis.rows() != T.rows()) throw InvalidInput("basis has the wrong number of rows");
  if (basis.cols() < 1 || basis.cols() > T.rows())
    throw InvalidInput("subspace dimension out of range");
  if (hermitian_defect(T) > 1e-12 * (1.0 + T.cwiseAbs().maxCoeff()))
    throw InvalidInput("T is not Hermitian");
  const CMatrix gram = basis.adjoint() * basis;
  if ((gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInput("basis is not orthonormal");
}

SubspaceRealization SubspaceRealization::leading(CMatrix T, Index d) {
  const Index n = T.rows();
  SubspaceRealization r{std::move(T), CMatrix::Identity(n, d)};
  r.validate();
  return r;
}

DefectOperator defect_operator(const CMatrix& T) {
  if (T.rows() != T.cols()) throw InvalidInput("defect_operator: square matrix expected");
  const Index n = T.rows();
  Eigen::SelfAdjointEigenSolver<CMatrix> es((T + T.adjoint()) / 2.0);
  const RVector& t = es.eigenvalues();
  if (n > 0 && t.cwiseAbs().maxCoeff() > 1.0 + kContractionTol)
    throw InvalidInput("defect_operator: T is not a contraction");
  RVector gap(n);
  for (Index j = 0; j < n; ++j) gap(j) = std::max(1.0 - t(j) * t(j), 0.0);
  const double top = n > 0 ? gap.maxCoeff() : 0.0;
  std::vector<Index> keep;
  for (Index j = 0; j < n; ++j)
    if (top > 0.0 && gap(j) > kRankTol * top) keep.push_back(j);
  const CMatrix& u = es.eigenvectors();
  DefectOperator out;
  out.D = u * gap.cwiseSqrt().cast<Complex>().asDiagonal() * u.adjoint();
  out.range.resize(n, static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) out.range.col(static_cast<Index>(k)) = u.col(keep[k]);
  return out;
}

SubspaceRealization bold_T(const SubspaceRealization& r) {
  r.validate();
  const auto defect = defect_operator(r.T);
  const CMatrix& v = r.basis;
  const CMatrix& q = defect.range;
  const Index d = v.cols();
  const Index m = q.cols();
  CMatrix out(d + m, d + m);
  out.topLeftCorner(d, d) = -(v.adjoint() * r.T * v);
  out.topRightCorner(d, m) = v.adjoint() * defect.D * q;
  out.bottomLeftCorner(m, d) = q.adjoint() * defect.D * v;
  out.bottomRightCorner(m, m) = q.adjoint() * r.T * q;
  // Exact hermitian symmetry; the blocks above agree up to rounding.
  const CMatrix sym = (out + out.adjoint()) / 2.0;
  return SubspaceRealization::leading(sym, d);
}

namespace {

[[noreturn]] void pole(Complex lambda) {
  std::ostringstream os;
  os << "near-singular resolvent at lambda = " << lambda;
  throw PoleError(os.str());
}

CMatrix checked_solve(const CMatrix& a, const CMatrix& rhs, Complex lambda) {
  Eigen::PartialPivLU<CMatrix> lu(a);
  const CMatrix x = lu.solve(rhs);
  const double res = (a * x - rhs).norm();
  if (!std::isfinite(res) || res > 1e-8 * std::max(rhs.norm(), 1e-300)) pole(lambda);
  return x;
}

}  // namespace

CMatrix compressed_resolvent(const CMatrix& A, const CMatrix& basis, Complex lambda) {
  const Index n = A.rows();
  if (A.cols() != n || basis.rows() != n)
    throw InvalidInput("compressed_resolvent: dimension mismatch");
  const CMatrix shifted = A - lambda * CMatrix::Identity(n, n);
  return basis.adjoint() * checked_solve(shifted, basis, lambda);
}

CMatrix compressed_resolvent_schur(const CMatrix& D, const CMatrix& K, const CMatrix& T,
                                   Complex lambda) {
  const Index d = D.rows();
  const Index h = T.rows();
  if (D.cols() != d || K.rows() != h || K.cols() != d || T.cols() != h)
    throw InvalidInput("compressed_resolvent_schur: dimension mismatch");
  CMatrix v = lambda * CMatrix::Identity(d, d) - D;
  if (h > 0) v += K.adjoint() * checked_solve(T - lambda * CMatrix::Identity(h, h), K, lambda);
  return -checked_solve(v, CMatrix::Identity(d, d), lambda);
}

CMatrix schur_frobenius_inverse(const CMatrix& D, const CMatrix& K, const CMatrix& T,
                                Complex lambda) {
  const Index d = D.rows();
  const Index h = T.rows();
  if (D.cols() != d || K.rows() != h || K.cols() != d || T.cols() != h)
    throw InvalidInput("schur_frobenius_inverse: dimension mismatch");
  const CMatrix idh = CMatrix::Identity(h, h);
  const CMatrix rt = checked_solve(T - lambda * idh, idh, lambda);  // (T - l)^{-1}
  const CMatrix v = lambda * CMatrix::Identity(d, d) - D + K.adjoint() * rt * K;
  const CMatrix vinv = checked_solve(v, CMatrix::Identity(d, d), lambda);
  CMatrix out(d + h, d + h);
  out.topLeftCorner(d, d) = -vinv;
  out.topRightCorner(d, h) = vinv * K.adjoint() * rt;
  out.bottomLeftCorner(h, d) = rt * K * vinv;
  out.bottomRightCorner(h, h) = rt * (idh - K * vinv * K.adjoint() * rt);
  return out;
}

SubspaceRealization ChainOperator::realization() const {
  return SubspaceRealization::leading(assembled, block_dim());
}

ChainOperator chain_A(const CMatrix& K, const CMatrix& That, Index n) {
  if (n < 1) throw InvalidInput("chain_A: index must be at least 1");
  const Index h = That.rows();
  const Index d = K.cols();
  if (That.cols() != h || K.rows() != h || d < 1)
    throw InvalidInput("chain_A: dimension mismatch between K and That");
  if (op_norm(K) > 1.0 + kContractionTol) throw InvalidInput("chain_A: K is not a contraction");
  if (hermitian_defect(That) > 1e-12 * (1.0 + That.cwiseAbs().maxCoeff()))
    throw InvalidInput("chain_A: That is not Hermitian");
  const Index size = n * d + h;
  if (size > kMaxChainDim) throw InvalidInput("chain_A: assembled dimension exceeds cap");
  CMatrix a = CMatrix::Zero(size, size);
  const CMatrix id = CMatrix::Identity(d, d);
  for (Index k = 0; k + 1 < n; ++k) {
    a.block(k * d, (k + 1) * d, d, d) = id;
    a.block((k + 1) * d, k * d, d, d) = id;
  }
  const Index last = (n - 1) * d;
  a.block(last, n * d, d, h) = K.adjoint();
  a.block(n * d, last, h, d) = K;
  a.bottomRightCorner(h, h) = That;
  return ChainOperator{n, K, That, std::move(a)};
}

ChainOperator extend(const ChainOperator& prev) {
  const Index d = prev.block_dim();
  const Index m = prev.assembled.rows();
  if (m + d > kMaxChainDim) throw InvalidInput("extend: assembled dimension exceeds cap");
  CMatrix a = CMatrix::Zero(m + d, m + d);
  a.block(0, d, d, d) = CMatrix::Identity(d, d);
  a.block(d, 0, d, d) = CMatrix::Identity(d, d);
  a.bottomRightCorner(m, m) = prev.assembled;
  return ChainOperator{prev.n + 1, prev.K, prev.That, std::move(a)};
}

SimplicityReport simplicity_check(const SubspaceRealization& r) {
  const Index n = r.T.rows();
  const double scale = std::max(1.0, op_norm(r.T));
  CMatrix basis = range_basis(r.basis, kRankTol);
  CMatrix front = basis;
  while (front.cols() > 0 && basis.cols() < n) {
    CMatrix w = r.T * front;
    for (int pass = 0; pass < 2; ++pass) w -= basis * (basis.adjoint() * w);
    if (w.size() == 0) break;
    Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Index keep = 0;
    while (keep < s.size() && s(keep) > kRankTol * scale) ++keep;
    if (keep == 0) break;
    front = svd.matrixU().leftCols(keep);
    CMatrix grown(n, basis.cols() + keep);
    grown << basis, front;
    basis = std::move(grown);
  }
  return {basis.cols() == n, basis.cols()};
}

RealizedFunction realize_gamma_hat(const RealizedFunction& f) {
  const auto form = resolvent_form(f);
  const Index d = f.dim();
  const Index h = form.T.rows();
  CMatrix t(d + h, d + h);
  t.topLeftCorner(d, d) = -form.E;
  t.topRightCorner(d, h) = form.K.adjoint();
  t.bottomLeftCorner(h, d) = form.K;
  t.bottomRightCorner(h, h) = form.T;
  const CMatrix sym = (t + t.adjoint()) / 2.0;
  return RealizedFunction::realization(sym, CMatrix::Identity(d + h, d));
}

SubspaceRealization as_subspace(const RealizedFunction& f) {
  const auto& r = f.as_realization();
  SubspaceRealization out{r.T, r.K};
  out.validate();
  return out;
}

}  // namespace nev
