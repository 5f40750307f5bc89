#include "nev/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nev/linalg.hpp"

namespace nev {

namespace {

constexpr double kStructTol = 1e-12;

void require_square(const CMatrix& m, Index d, const char* what) {
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << what << " must be " << d << "x" << d << ", got " << m.rows() << "x" << m.cols();
    throw InvalidInput(os.str());
  }
}

bool hermitian_enough(const CMatrix& m) {
  return hermitian_defect(m) <= kStructTol * (1.0 + m.cwiseAbs().maxCoeff());
}

bool psd_enough(const CMatrix& m) {
  return hermitian_enough(m) && min_eigenvalue(m) >= -kStructTol * (1.0 + op_norm(m));
}

void check_pole(double dist, Complex lambda) {
  if (dist <= kStructTol * (1.0 + std::abs(lambda))) {
    std::ostringstream os;
    os << "pole at lambda = " << lambda;
    throw PoleError(os.str());
  }
}

}  // namespace

RealizedFunction::RealizedFunction(DiscreteMeasure m) : data_(std::move(m)) {
  const auto& dm = std::get<DiscreteMeasure>(data_);
  dim_ = dm.A.rows();
  require_square(dm.A, dim_, "A");
  require_square(dm.B, dim_, "B");
  for (const auto& a : dm.atoms) require_square(a.weight, dim_, "atom weight");
}

RealizedFunction::RealizedFunction(Realization r) : data_(std::move(r)) {
  const auto& re = std::get<Realization>(data_);
  if (re.T.rows() != re.T.cols()) throw InvalidInput("T must be square");
  if (re.K.rows() != re.T.rows())
    throw InvalidInput("K must have as many rows as T");
  dim_ = re.K.cols();
  const CMatrix h = (re.T + re.T.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  eigenvalues_ = es.eigenvalues();
  spectral_K_ = es.eigenvectors().adjoint() * re.K;
}

RealizedFunction RealizedFunction::unchecked(DiscreteMeasure m) {
  return RealizedFunction(std::move(m));
}

RealizedFunction RealizedFunction::unchecked(Realization r) {
  return RealizedFunction(std::move(r));
}

RealizedFunction RealizedFunction::measure(CMatrix A, CMatrix B, std::vector<Atom> atoms) {
  RealizedFunction f(DiscreteMeasure{std::move(A), std::move(B), std::move(atoms)});
  const auto v = f.violations();
  if (!v.empty()) throw InvalidInput(v.front());
  return f;
}

RealizedFunction RealizedFunction::realization(CMatrix T, CMatrix K) {
  RealizedFunction f(Realization{std::move(T), std::move(K)});
  const auto v = f.violations();
  if (!v.empty()) throw InvalidInput(v.front());
  return f;
}

RealizedFunction RealizedFunction::zero(Index d) {
  return measure(CMatrix::Zero(d, d), CMatrix::Zero(d, d), {});
}

const DiscreteMeasure& RealizedFunction::as_measure() const {
  if (!is_measure()) throw InvalidInput("not a measure-variant function");
  return std::get<DiscreteMeasure>(data_);
}

const Realization& RealizedFunction::as_realization() const {
  if (!is_realization()) throw InvalidInput("not a realization-variant function");
  return std::get<Realization>(data_);
}

std::vector<std::string> RealizedFunction::violations() const {
  std::vector<std::string> out;
  if (dim_ < 1) out.emplace_back("dimension must be at least 1");
  if (is_measure()) {
    const auto& m = as_measure();
    if (!hermitian_enough(m.A)) out.emplace_back("A is not Hermitian");
    if (!psd_enough(m.B)) out.emplace_back("B is not positive semidefinite");
    for (std::size_t j = 0; j < m.atoms.size(); ++j) {
      if (!std::isfinite(m.atoms[j].t)) out.emplace_back("atom location is not finite");
      if (!psd_enough(m.atoms[j].weight))
        out.emplace_back("atom weight " + std::to_string(j) + " is not positive semidefinite");
      for (std::size_t k = 0; k < j; ++k)
        if (m.atoms[k].t == m.atoms[j].t)
          out.emplace_back("atoms " + std::to_string(k) + " and " + std::to_string(j) +
                           " share a location");
    }
  } else {
    const auto& r = as_realization();
    if (!hermitian_enough(r.T)) out.emplace_back("T is not Hermitian");
    if (op_norm(r.K) > 1.0 + kStructTol) out.emplace_back("K is not a contraction");
  }
  return out;
}

CMatrix evaluate(const RealizedFunction& f, Complex lambda) {
  if (f.is_measure()) {
    const auto& m = f.as_measure();
    CMatrix out = m.A + lambda * m.B;
    for (const auto& a : m.atoms) {
      check_pole(std::abs(a.t - lambda), lambda);
      out += a.weight * (1.0 / (a.t - lambda) - a.t / (a.t * a.t + 1.0));
    }
    return out;
  }
  const RVector& t = f.spectrum();
  const CMatrix& uk = f.spectral_K();
  CVector scale(t.size());
  for (Index j = 0; j < t.size(); ++j) {
    check_pole(std::abs(t(j) - lambda), lambda);
    scale(j) = 1.0 / (t(j) - lambda);
  }
  return uk.adjoint() * scale.asDiagonal() * uk;
}

CMatrix evaluate_derivative(const RealizedFunction& f, Complex lambda) {
  if (f.is_measure()) {
    const auto& m = f.as_measure();
    CMatrix out = m.B;
    for (const auto& a : m.atoms) {
      check_pole(std::abs(a.t - lambda), lambda);
      const Complex r = 1.0 / (a.t - lambda);
      out += a.weight * (r * r);
    }
    return out;
  }
  const RVector& t = f.spectrum();
  const CMatrix& uk = f.spectral_K();
  CVector scale(t.size());
  for (Index j = 0; j < t.size(); ++j) {
    check_pole(std::abs(t(j) - lambda), lambda);
    const Complex r = 1.0 / (t(j) - lambda);
    scale(j) = r * r;
  }
  return uk.adjoint() * scale.asDiagonal() * uk;
}

ResolventForm resolvent_form(const RealizedFunction& f) {
  const Index d = f.dim();
  if (f.is_realization()) {
    const auto& r = f.as_realization();
    return {CMatrix::Zero(d, d), r.T, r.K};
  }
  const auto& m = f.as_measure();
  if (m.B.cwiseAbs().maxCoeff() > 0.0)
    throw UnboundedLimit("measure has a nonzero linear term B");
  CMatrix E = m.A;
  std::vector<double> locs;
  std::vector<CVector> cols;
  for (const auto& a : m.atoms) {
    E -= a.weight * (a.t / (a.t * a.t + 1.0));
    // W = sum_k s_k v_k v_k*  ->  K rows sqrt(s_k) v_k*
    Eigen::SelfAdjointEigenSolver<CMatrix> es((a.weight + a.weight.adjoint()) / 2.0);
    const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 0.0);
    for (Index k = 0; k < d; ++k) {
      const double s = es.eigenvalues()(k);
      if (s > 1e-14 * top) {
        locs.push_back(a.t);
        cols.push_back(std::sqrt(s) * es.eigenvectors().col(k));
      }
    }
  }
  const Index n = static_cast<Index>(locs.size());
  ResolventForm out{E, CMatrix::Zero(n, n), CMatrix(n, d)};
  for (Index j = 0; j < n; ++j) {
    out.T(j, j) = locs[static_cast<std::size_t>(j)];
    out.K.row(j) = cols[static_cast<std::size_t>(j)].adjoint();
  }
  return out;
}

CMatrix asymptotic_C(const RealizedFunction& f) {
  if (f.is_realization()) {
    const auto& r = f.as_realization();
    return r.K.adjoint() * r.K;
  }
  const auto& m = f.as_measure();
  if (m.B.cwiseAbs().maxCoeff() > 0.0)
    throw UnboundedLimit("iy M(iy) is unbounded: linear term B is nonzero");
  CMatrix total = CMatrix::Zero(f.dim(), f.dim());
  CMatrix E = m.A;
  for (const auto& a : m.atoms) {
    total += a.weight;
    E -= a.weight * (a.t / (a.t * a.t + 1.0));
  }
  if (E.cwiseAbs().maxCoeff() > kStructTol * (1.0 + total.cwiseAbs().maxCoeff()))
    throw UnboundedLimit("iy M(iy) is unbounded: M does not vanish at infinity");
  return total;
}

RealizedFunction to_measure(const RealizedFunction& f) {
  if (f.is_measure()) return f;
  const Index d = f.dim();
  const RVector& t = f.spectrum();
  const CMatrix& uk = f.spectral_K();
  std::vector<Atom> atoms;
  CMatrix A = CMatrix::Zero(d, d);
  Index j = 0;
  while (j < t.size()) {
    Index k = j + 1;
    while (k < t.size() && t(k) - t(j) <= 1e-12 * (1.0 + std::abs(t(j)))) ++k;
    const double loc = t.segment(j, k - j).mean();
    const CMatrix rows = uk.middleRows(j, k - j);
    CMatrix w = rows.adjoint() * rows;
    A += w * (loc / (loc * loc + 1.0));
    atoms.push_back({loc, std::move(w)});
    j = k;
  }
  return RealizedFunction::unchecked(DiscreteMeasure{A, CMatrix::Zero(d, d), std::move(atoms)});
}

namespace {

void check_samples(const SampleSet& s, Index d) {
  if (s.points.empty()) throw InvalidInput("sample set is empty");
  if (!s.vectors.empty()) {
    if (s.vectors.size() != s.points.size())
      throw InvalidInput("sample set needs one probe vector per point");
    for (const auto& v : s.vectors)
      if (v.size() != d) throw InvalidInput("probe vector has the wrong dimension");
  }
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    if (s.points[k].imag() == 0.0) throw DomainError("sample point on the real axis");
    for (std::size_t l = 0; l < k; ++l)
      if (s.points[k] == s.points[l]) throw InvalidInput("sample points must be distinct");
  }
}

bool conj_collision(Complex a, Complex b) {
  return std::abs(a - std::conj(b)) <= 1e-14 * (1.0 + std::abs(a));
}

template <typename Kernel>
CMatrix assemble_gram(const SampleSet& s, Index d, Kernel&& kernel) {
  const Index n = static_cast<Index>(s.points.size());
  const bool probed = !s.vectors.empty();
  CMatrix g = probed ? CMatrix(n, n) : CMatrix(n * d, n * d);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      const CMatrix kl = kernel(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
      if (probed)
        g(k, l) = s.vectors[static_cast<std::size_t>(k)].dot(
            kl * s.vectors[static_cast<std::size_t>(l)]);
      else
        g.block(k * d, l * d, d, d) = kl;
    }
  }
  return g;
}

}  // namespace

CMatrix nevanlinna_gram(const RealizedFunction& f, const SampleSet& s) {
  const Index d = f.dim();
  check_samples(s, d);
  std::vector<CMatrix> values;
  values.reserve(s.points.size());
  for (const auto& p : s.points) values.push_back(evaluate(f, p));
  return assemble_gram(s, d, [&](std::size_t k, std::size_t l) -> CMatrix {
    const Complex a = s.points[k];
    const Complex b = s.points[l];
    if (conj_collision(a, b)) return evaluate_derivative(f, a);
    return (values[k] - values[l].adjoint()) / (a - std::conj(b));
  });
}

CMatrix class_n0_interval_gram(const RealizedFunction& f, const SampleSet& s) {
  const Index d = f.dim();
  check_samples(s, d);
  const CMatrix id = CMatrix::Identity(d, d);
  std::vector<CMatrix> values;
  values.reserve(s.points.size());
  for (const auto& p : s.points) {
    if (p.imag() == 0.0 && std::abs(p.real()) <= 1.0)
      throw DomainError("sample point on [-1, 1]");
    values.push_back((1.0 - p * p) * evaluate(f, p));
  }
  return assemble_gram(s, d, [&](std::size_t k, std::size_t l) -> CMatrix {
    const Complex a = s.points[k];
    const Complex b = s.points[l];
    if (conj_collision(a, b))
      throw DomainError("interval kernel is undefined at lambda = conj(xi)");
    const Complex den = a - std::conj(b);
    return (values[k] - values[l].adjoint() - den * id) / den;
  });
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

Complex Rng::complex_uniform() {
  const double re = uniform(-1.0, 1.0);
  const double im = uniform(-1.0, 1.0);
  return {re, im};
}

CMatrix Rng::complex_matrix(Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_uniform();
  return m;
}

CMatrix Rng::hermitian(Index n) {
  const CMatrix g = complex_matrix(n, n);
  return (g + g.adjoint()) / 2.0;
}

RealizedFunction random_nevanlinna(std::uint64_t seed, Index d, Index n, RandomOptions options) {
  if (d < 1 || n < d) throw InvalidInput("random_nevanlinna requires d >= 1 and n >= d");
  Rng rng(seed);
  CMatrix T = rng.hermitian(n);
  if (options.contraction) {
    const double norm = op_norm(T);
    if (norm > 0.0) T *= rng.uniform(0.5, 1.0) / norm;
  }
  CMatrix K = rng.complex_matrix(n, d);
  if (options.isometric) {
    Eigen::HouseholderQR<CMatrix> qr(K);
    K = qr.householderQ() * CMatrix::Identity(n, d);
  } else {
    const double norm = op_norm(K);
    if (norm > 0.0) K *= rng.uniform(0.3, 1.0) / norm;
  }
  return RealizedFunction::realization(std::move(T), std::move(K));
}

}  // namespace nev
