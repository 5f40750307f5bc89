#include "nev/linalg.hpp"

#include <limits>

namespace nev {

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double min_eigenvalue(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const CMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const CMatrix& g, double rel_tol) {
  return min_eigenvalue(g) >= -rel_tol * (1.0 + op_norm(g));
}

double hermitian_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Index numerical_rank(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return r;
}

CMatrix range_basis(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index r = 0;
  if (s(0) > 0.0)
    while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

CMatrix orthogonal_complement(const CMatrix& basis) {
  const Index n = basis.rows();
  const Index d = basis.cols();
  if (d == 0) return CMatrix::Identity(n, n);
  Eigen::HouseholderQR<CMatrix> qr(basis);
  const CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  return q.rightCols(n - d);
}

}  // namespace nev
