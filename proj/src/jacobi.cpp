#include "nev/jacobi.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nev/linalg.hpp"
#include "nev/specialfn.hpp"

namespace nev {

BlockJacobi::BlockJacobi(std::vector<CMatrix> a, std::vector<CMatrix> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw InvalidInput("Jacobi matrix needs at least one block");
  if (b_.size() + 1 != a_.size())
    throw InvalidInput("Jacobi matrix needs exactly N-1 off-diagonal blocks");
  d_ = a_.front().rows();
  if (d_ < 1) throw InvalidInput("block dimension must be positive");
  for (std::size_t k = 0; k < a_.size(); ++k) {
    const auto& ak = a_[k];
    if (ak.rows() != d_ || ak.cols() != d_) throw InvalidInput("diagonal block has wrong shape");
    if (hermitian_defect(ak) > 1e-12 * (1.0 + ak.cwiseAbs().maxCoeff()))
      throw InvalidInput("diagonal block " + std::to_string(k) + " is not Hermitian");
  }
  for (std::size_t k = 0; k < b_.size(); ++k) {
    const auto& bk = b_[k];
    if (bk.rows() != d_ || bk.cols() != d_)
      throw InvalidInput("off-diagonal block has wrong shape");
    if (d_ == 1) {
      if (bk(0, 0).imag() != 0.0 || !(bk(0, 0).real() > 0.0))
        throw InvalidInput("scalar off-diagonal entry " + std::to_string(k) +
                           " must be real and positive");
    } else if (!Eigen::FullPivLU<CMatrix>(bk).isInvertible()) {
      throw InvalidInput("off-diagonal block " + std::to_string(k) + " is singular");
    }
  }
}

BlockJacobi BlockJacobi::scalar(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<CMatrix> ab, bb;
  for (double x : a) ab.push_back(CMatrix::Constant(1, 1, x));
  for (double x : b) bb.push_back(CMatrix::Constant(1, 1, x));
  return BlockJacobi(std::move(ab), std::move(bb));
}

std::vector<double> BlockJacobi::scalar_diagonal() const {
  if (d_ != 1) throw Unsupported("block Jacobi matrix has no scalar coefficients");
  std::vector<double> out;
  for (const auto& x : a_) out.push_back(x(0, 0).real());
  return out;
}

std::vector<double> BlockJacobi::scalar_off_diagonal() const {
  if (d_ != 1) throw Unsupported("block Jacobi matrix has no scalar coefficients");
  std::vector<double> out;
  for (const auto& x : b_) out.push_back(x(0, 0).real());
  return out;
}

CMatrix BlockJacobi::dense() const {
  const Index n = length();
  CMatrix out = CMatrix::Zero(n * d_, n * d_);
  for (Index k = 0; k < n; ++k) {
    out.block(k * d_, k * d_, d_, d_) = a_[static_cast<std::size_t>(k)];
    if (k + 1 < n) {
      const auto& bk = b_[static_cast<std::size_t>(k)];
      out.block(k * d_, (k + 1) * d_, d_, d_) = bk;
      out.block((k + 1) * d_, k * d_, d_, d_) = bk.adjoint();
    }
  }
  return out;
}

BlockJacobi BlockJacobi::truncated(Index n) const {
  if (n < 1 || n > length()) throw InvalidInput("truncation length out of range");
  return BlockJacobi(std::vector<CMatrix>(a_.begin(), a_.begin() + n),
                     std::vector<CMatrix>(b_.begin(), b_.begin() + (n - 1)));
}

BlockJacobi build_J0(Index d, Index n) {
  if (d < 1 || n < 2) throw InvalidInput("build_J0 requires d >= 1 and N >= 2");
  const CMatrix id = CMatrix::Identity(d, d);
  std::vector<CMatrix> a(static_cast<std::size_t>(n), CMatrix::Zero(d, d));
  std::vector<CMatrix> b(static_cast<std::size_t>(n - 1), 0.5 * id);
  b.front() = id / std::numbers::sqrt2;
  return BlockJacobi(std::move(a), std::move(b));
}

BlockJacobi build_Jhat0(Index d, Index n) {
  if (d < 1 || n < 2) throw InvalidInput("build_Jhat0 requires d >= 1 and N >= 2");
  const CMatrix id = CMatrix::Identity(d, d);
  return BlockJacobi(std::vector<CMatrix>(static_cast<std::size_t>(n), CMatrix::Zero(d, d)),
                     std::vector<CMatrix>(static_cast<std::size_t>(n - 1), id));
}

namespace {

[[noreturn]] void pole(Complex lambda, const char* how) {
  std::ostringstream os;
  os << how << " at lambda = " << lambda;
  throw PoleError(os.str());
}

}  // namespace

CMatrix m_resolvent(const BlockJacobi& j, Complex lambda) {
  const Index n = j.length();
  const Index d = j.block_dim();
  const auto& a = j.diagonal();
  const auto& b = j.off_diagonal();
  const CMatrix id = CMatrix::Identity(d, d);
  auto shifted = [&](Index k) -> CMatrix { return a[static_cast<std::size_t>(k)] - lambda * id; };

  // Forward elimination: D_k = (a_k - l) - b_{k-1}* D_{k-1}^{-1} b_{k-1},
  // y_k = -b_{k-1}* D_{k-1}^{-1} y_{k-1}, right-hand side E_0 = [I; 0; ...].
  std::vector<Eigen::PartialPivLU<CMatrix>> piv;
  std::vector<CMatrix> y;
  piv.reserve(static_cast<std::size_t>(n));
  y.reserve(static_cast<std::size_t>(n));
  piv.emplace_back(shifted(0));
  y.push_back(id);
  for (Index k = 1; k < n; ++k) {
    const auto& bk = b[static_cast<std::size_t>(k - 1)];
    const auto& prev = piv.back();
    const CMatrix dk = shifted(k) - bk.adjoint() * prev.solve(bk);
    y.push_back(-bk.adjoint() * prev.solve(y.back()));
    piv.emplace_back(dk);
  }
  // Back substitution.
  std::vector<CMatrix> x(static_cast<std::size_t>(n));
  x[static_cast<std::size_t>(n - 1)] = piv.back().solve(y.back());
  for (Index k = n - 2; k >= 0; --k) {
    const auto uk = static_cast<std::size_t>(k);
    x[uk] = piv[uk].solve(y[uk] - b[uk] * x[uk + 1]);
  }
  // Residual of (J - l) X = E_0.
  double res = 0.0;
  for (Index k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    CMatrix r = shifted(k) * x[uk];
    if (k > 0) r += b[uk - 1].adjoint() * x[uk - 1];
    if (k + 1 < n) r += b[uk] * x[uk + 1];
    if (k == 0) r -= id;
    const double rk = r.norm();
    if (!std::isfinite(rk)) pole(lambda, "singular block elimination");
    res = std::max(res, rk);
  }
  if (res > 1e-8 * id.norm()) pole(lambda, "near-singular shift");
  return x.front();
}

CMatrix m_cf(const BlockJacobi& j, Complex lambda) {
  const Index n = j.length();
  const Index d = j.block_dim();
  const auto& a = j.diagonal();
  const auto& b = j.off_diagonal();
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix m = CMatrix::Zero(d, d);
  for (Index k = n - 1; k >= 0; --k) {
    const auto uk = static_cast<std::size_t>(k);
    CMatrix shift = lambda * id - a[uk];
    if (k + 1 < n) shift += b[uk] * m * b[uk].adjoint();
    Eigen::PartialPivLU<CMatrix> lu(shift);
    if (!(lu.rcond() > 1e-14)) pole(lambda, "singular continued-fraction denominator");
    m = -lu.inverse();
  }
  return m;
}

Complex quadrature_m0(Complex lambda, Index nodes, ChebyshevKind kind) {
  if (nodes < 1) throw InvalidInput("quadrature needs at least one node");
  const double pi = std::numbers::pi;
  Complex sum = 0.0;
  if (kind == ChebyshevKind::First) {
    if (distance_to_segment(lambda, 1.0) < kCutTolerance)
      throw DomainError("quadrature_m0: lambda on [-1, 1]");
    // (1/pi) int f(t) (1-t^2)^{-1/2} dt ~ (1/n) sum f(cos((2k-1) pi / 2n))
    for (Index k = 1; k <= nodes; ++k) {
      const double t = std::cos((2.0 * k - 1.0) * pi / (2.0 * nodes));
      sum += 1.0 / (t - lambda);
    }
    return sum / static_cast<double>(nodes);
  }
  if (distance_to_segment(lambda, 2.0) < kCutTolerance)
    throw DomainError("quadrature_m0: lambda on [-2, 2]");
  // t = 2s: (2/pi) int_{-1}^{1} sqrt(1-s^2) / (2s - l) ds, with second-kind
  // nodes s_k = cos(k pi/(n+1)) and weights pi/(n+1) sin^2(k pi/(n+1)).
  const double h = pi / static_cast<double>(nodes + 1);
  for (Index k = 1; k <= nodes; ++k) {
    const double s = std::cos(k * h);
    const double w = std::sin(k * h);
    sum += (w * w) / (2.0 * s - lambda);
  }
  return sum * (2.0 * h / pi);
}

}  // namespace nev
