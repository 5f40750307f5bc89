#include "nev/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nev/canonical.hpp"
#include "nev/format.hpp"
#include "nev/herglotz.hpp"
#include "nev/jacobi.hpp"
#include "nev/kac.hpp"
#include "nev/linalg.hpp"
#include "nev/realize.hpp"
#include "nev/specialfn.hpp"
#include "nev/transforms.hpp"

namespace nev {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}

  void at_most(const std::string& name, double value, double tol, std::string detail = {}) {
    r_.checks.push_back({name, value <= tol, value, tol, std::move(detail)});
  }
  void below(const std::string& name, double value, double tol, std::string detail = {}) {
    r_.checks.push_back({name, value < tol, value, tol, std::move(detail)});
  }
  void holds(const std::string& name, bool ok, std::string detail = {}) {
    r_.checks.push_back({name, ok, kNaN, kNaN, std::move(detail)});
  }

 private:
  SuiteReport& r_;
};

double vector_gap(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
  return worst;
}

double hamiltonian_gap(const StepHamiltonian& x, const StepHamiltonian& y) {
  return std::max(vector_gap(x.breakpoints(), y.breakpoints()), vector_gap(x.thetas(), y.thetas()));
}

bool identical(const StepHamiltonian& x, const StepHamiltonian& y) {
  return x.breakpoints() == y.breakpoints() && x.thetas() == y.thetas();
}

// Random point with |Im| in [lo, hi], either half-plane.
Complex random_offaxis(Rng& rng, double re, double lo, double hi) {
  const double im = rng.uniform(lo, hi);
  return {rng.uniform(-re, re), rng.uniform() < 0.5 ? im : -im};
}

// ---------------------------------------------------------------- 1
void fixed_points(Recorder& rec) {
  std::vector<Complex> grid;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double im = 0.5 + 4.5 * (j % 5) / 4.0;
      grid.emplace_back(-3.0 + 6.0 * i / 9.0, j < 5 ? im : -im);
    }
  double hat = 0.0;
  for (Complex z : grid) {
    const Complex m = m0_gammahat(z);
    hat = std::max(hat, std::abs(-1.0 / (m + z) - m));
    hat = std::max(hat, op_norm(gamma_hat(CMatrix::Constant(1, 1, m), z) - CMatrix::Constant(1, 1, m)));
  }
  rec.below("max |Gammahat(M0) - M0| over 100-point grid", hat, 1e-12);

  std::vector<Complex> off = grid;
  for (double x : {-5.0, -3.0, -2.0, -1.5, 1.5, 2.0, 3.0, 5.0}) off.emplace_back(x, 0.0);
  for (Index d : {1, 3}) {
    double worst = 0.0;
    for (Complex z : off) {
      const CMatrix m = m0_gamma(z) * CMatrix::Identity(d, d);
      worst = std::max(worst, op_norm(gamma(m, z) - m));
    }
    rec.below("max ||Gamma(M0) - M0||, d = " + std::to_string(d), worst, 1e-12);
  }
}

// ---------------------------------------------------------------- 2
void quadrature(Recorder& rec) {
  Rng rng(2024);
  double first = 0.0, second = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Complex z = random_offaxis(rng, 3.0, 0.5, 3.0);
    first = std::max(first, std::abs(quadrature_m0(z, 10000, ChebyshevKind::First) - m0_gamma(z)));
    second = std::max(second,
                      std::abs(quadrature_m0(z, 10000, ChebyshevKind::Second) - m0_gammahat(z)));
  }
  rec.below("Gauss-Chebyshev first kind vs m0_gamma (20 points, 1e4 nodes)", first, 1e-10);
  rec.below("Gauss-Chebyshev second kind vs m0_gammahat (20 points, 1e4 nodes)", second, 1e-10);
}

// ---------------------------------------------------------------- 3
void contraction(Recorder& rec) {
  const IterationTrace tr = iterate_gamma_hat(RealizedFunction::zero(1), Complex(0, 2), 30);
  rec.at_most("max ratio r_{n+1}/r_n above the 1e-14 floor", tr.max_ratio(1e-14), 0.25 + 1e-10);
  rec.at_most("residual at n = 30", tr.residuals.back(), 1e-14);
}

// ---------------------------------------------------------------- 4
void uniform(Recorder& rec) {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const Complex z(1.0 + i / 19.0, 1.5 + j / 19.0);
      worst = std::max(worst, iterate_gamma_hat(RealizedFunction::zero(1), z, 20).residuals.back());
    }
  rec.below("max residual at n = 20 over 20x20 grid [1,2] x [1.5i,2.5i]", worst, 1e-10);
}

// ---------------------------------------------------------------- 5
void truncation(Recorder& rec) {
  const Complex z1(1, 2);
  rec.below("|m(Jhat0, N=200)(1+2i) - M0(1+2i)|",
            std::abs(m_resolvent(build_Jhat0(1, 200), z1)(0, 0) - m0_gammahat(z1)), 1e-8);
  const Complex z2(0, 2);
  rec.below("|m(J0, N=400)(2i) - M0(2i)|",
            std::abs(m_resolvent(build_J0(1, 400), z2)(0, 0) - m0_gamma(z2)), 1e-10);
}

// ---------------------------------------------------------------- 6
void wollen(Recorder& rec) {
  Rng rng(66);
  double worst = 0.0, norm = 0.0;
  int simple = 0;
  bool preserved = true;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto f = random_nevanlinna(600 + s, 3, 12, {.contraction = true, .isometric = true});
    const SubspaceRealization r = as_subspace(f);
    const SubspaceRealization big = bold_T(r);
    norm = std::max(norm, op_norm(big.T));
    for (int k = 0; k < 20; ++k) {
      const Complex z = random_offaxis(rng, 2.0, 0.2, 2.0);
      const CMatrix lhs = compressed_resolvent(big.T, big.basis, z);
      const CMatrix rhs = gamma(compressed_resolvent(r.T, r.basis, z), z);
      worst = std::max(worst, op_norm(lhs - rhs));
    }
    if (simplicity_check(r).is_simple) {
      ++simple;
      preserved = preserved && simplicity_check(big).is_simple;
    }
  }
  rec.below("max ||P(boldT - l)^{-1}P - (l^2-1)^{-1} M(l)^{-1}||", worst, 1e-10);
  rec.at_most("max ||boldT||", norm, 1.0 + 1e-12);
  rec.holds("simplicity preserved", preserved && simple > 0,
            std::to_string(simple) + " of 10 realizations simple");
}

// ---------------------------------------------------------------- 7
void chain(Recorder& rec) {
  Rng rng(77);
  double worst = 0.0;
  bool corners = true;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = random_nevanlinna(700 + s, 2, 4);
    const auto m1 = realize_gamma_hat(f).as_realization();
    std::vector<Complex> pts;
    for (int k = 0; k < 30; ++k) pts.push_back(random_offaxis(rng, 2.0, 0.3, 2.0));
    std::vector<IterationTrace> traces;
    for (Complex z : pts) traces.push_back(iterate_gamma_hat(f, z, 7));
    ChainOperator a = chain_A(m1.K, m1.T, 1);
    for (Index n = 1; n <= 6; ++n) {
      if (n > 1) a = extend(a);
      const SubspaceRealization r = a.realization();
      for (std::size_t k = 0; k < pts.size(); ++k)
        worst = std::max(worst, op_norm(compressed_resolvent(r.T, r.basis, pts[k]) -
                                        traces[k].values[static_cast<std::size_t>(n)]));
      const Index c = n * 2;
      const CMatrix expected = n == 1 ? CMatrix::Zero(2, 2) : build_Jhat0(2, n).dense();
      corners = corners && a.assembled.topLeftCorner(c, c) == expected;
    }
  }
  rec.below("max ||P(A_n - l)^{-1}P - M_{n+1}(l)||, n <= 6", worst, 1e-10);
  rec.holds("top-left corner of A_n equals the Jhat0 truncation (exact)", corners);
}

// ---------------------------------------------------------------- 8
void kac(Recorder& rec) {
  const auto h = kac_algorithm(std::vector<double>(60, 0.0), std::vector<double>(60, 1.0), 52);
  double gap = 0.0;
  for (Index j = 0; j <= 50; ++j) {
    gap = std::max(gap, std::abs(h.length(j) - 1.0));
    gap = std::max(gap, std::abs(h.thetas()[static_cast<std::size_t>(j)] -
                                 (static_cast<double>(j) + 1.0) * std::numbers::pi / 2.0));
  }
  rec.at_most("Jhat0: max |l_j - 1|, |theta_j - (j+1)pi/2|, j <= 50", gap, 1e-12);

  double first = 0.0;
  Eigen::Matrix2d e;
  e << 0, 0, 0, 1;
  for (const auto& set : coefficient_corpus(40)) {
    const auto h = kac_algorithm(set.a, set.b, 30);
    first = std::max(first, (evaluate_H(h, 0.5) - e).cwiseAbs().maxCoeff());
    if (h.breakpoints()[1] != 1.0) first = std::numeric_limits<double>::infinity();
  }
  rec.at_most("first interval [0,1) carries [[0,0],[0,1]], every corpus set", first, 1e-15);

  std::vector<double> a(10, 0.0), b(10, 1.0);
  a[0] = 1.0;
  const auto v = kac_algorithm(a, b, 3);
  const double pi = std::numbers::pi;
  const double g = std::max({std::abs(v.thetas()[1] - 5 * pi / 4), std::abs(v.length(1) - 2.0),
                             std::abs(v.thetas()[2] - 3 * pi / 2)});
  rec.at_most("a_0 = 1 variant: (theta_1, l_1, theta_2) = (5pi/4, 2, 3pi/2)", g, 1e-12);
}

// ---------------------------------------------------------------- 9
void hn(Recorder& rec) {
  const Index m = 30;
  double gap = 0.0;
  bool prefix = true;
  auto corpus = coefficient_corpus(m + 10);
  corpus.erase(corpus.begin());  // Jhat0 itself is the trivial case
  for (const auto& set : {corpus[0], corpus[1]}) {
    const auto h = kac_algorithm(set.a, set.b, m);
    for (Index n = 1; n <= 8; ++n) {
      const auto direct = hamiltonian_Hn(h, n);
      const auto [an, bn] = shifted_coefficients(set.a, set.b, n);
      const auto viaKac = kac_algorithm(an, bn, m + n);
      gap = std::max(gap, hamiltonian_gap(direct, viaKac));
      prefix = prefix && identical(direct.truncated(n + 1), hamiltonian_H0(n + 1));
    }
  }
  rec.at_most("max gap Hn (angle shift) vs Kac on shifted coefficients, n <= 8", gap, 1e-12);
  rec.holds("prefix [0, n+1) equals H0 exactly", prefix);
}

// ---------------------------------------------------------------- 10
void kac_canonical(Recorder& rec) {
  const Complex z(0, 2);
  const auto e0 = m_canonical(hamiltonian_H0(200), z, 1e-6);
  rec.at_most("|m_H0(2i) - (sqrt2 - 1) i|", std::abs(e0.center - Complex(0, std::sqrt(2.0) - 1)),
              1e-6);
  rec.below("certified radius", e0.radius, 1e-6);
  rec.at_most("truncation T reached", e0.truncation_T, 60.0);

  std::vector<double> a(200, 0.0), b(200, 1.0);
  a[0] = 1.0;
  const auto e1 = m_canonical(kac_algorithm(a, b, 200), z, 1e-6);
  const Complex oracle = -1.0 / (z - 1.0 + m0_gammahat(z));
  rec.at_most("a_0 = 1 Hamiltonian vs -1/(l - 1 + M0(l)) at 2i", std::abs(e1.center - oracle), 2e-6);
}

// ---------------------------------------------------------------- 11
void kernels(Recorder& rec) {
  Rng rng(1111);
  double nev = std::numeric_limits<double>::infinity();
  double interval = std::numeric_limits<double>::infinity();
  double dual = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Index d = 1 + static_cast<Index>(s % 3);
    // Class N0[-1,1] normalization iy M(iy) -> -I needs K*K = I.
    const auto f = random_nevanlinna(1100 + s, d, 6, {.contraction = true, .isometric = true});
    SampleSet smp;
    for (int k = 0; k < 8; ++k) smp.points.push_back(random_offaxis(rng, 2.0, 0.1, 2.0));
    const CMatrix g = nevanlinna_gram(f, smp);
    nev = std::min(nev, min_eigenvalue(g) / (1.0 + op_norm(g)));
    const CMatrix l = class_n0_interval_gram(f, smp);
    interval = std::min(interval, min_eigenvalue(l) / (1.0 + op_norm(l)));

    const auto& r = f.as_realization();
    const Index n = r.T.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix defect = id - r.T * r.T;
    for (std::size_t k = 0; k < smp.points.size(); ++k)
      for (std::size_t q = 0; q < smp.points.size(); ++q) {
        const CMatrix left = r.K.adjoint() * (r.T - smp.points[k] * id).inverse();
        const CMatrix right = (r.T - std::conj(smp.points[q]) * id).inverse() * r.K;
        const CMatrix block = left * defect * right;
        dual = std::max(dual, (block - l.block(static_cast<Index>(k) * d, static_cast<Index>(q) * d, d, d))
                                  .cwiseAbs()
                                  .maxCoeff());
      }
  }
  rec.at_most("min relative eigenvalue, Nevanlinna Gram (50 x 8 points)", -nev, 1e-10);
  rec.at_most("min relative eigenvalue, interval Gram (50 x 8 points)", -interval, 1e-10);
  rec.below("interval kernel vs K*(T-l)^{-1}(I-T^2)(T-conj x)^{-1}K", dual, 1e-11);
}

// ---------------------------------------------------------------- 12
void scheme(Recorder& rec) {
  bool fixed = true;
  for (Index m : {2, 5, 20, 60})
    fixed = fixed && identical(gammahat_hamiltonian(hamiltonian_H0(m)), hamiltonian_H0(m + 1));
  rec.holds("gammahat_hamiltonian(H0) = H0 (exact)", fixed);
  double gap = 0.0;
  for (const auto& set : coefficient_corpus(50))
    gap = std::max(gap, hamiltonian_gap(gammahat_hamiltonian(kac_algorithm(set.a, set.b, 40)),
                                        hamiltonian_Hn(kac_algorithm(set.a, set.b, 40), 1)));
  rec.at_most("max gap gammahat_hamiltonian(H) vs Hn(H, 1) over the corpus", gap, 1e-12);
}

struct SuiteDef {
  const char* name;
  int criterion;
  const char* title;
  double budget;  // seconds; 0 = no runtime assertion
  void (*run)(Recorder&);
};

const SuiteDef kSuites[] = {
    {"fixed-points", 1, "fixed-point identities of Gamma and Gammahat", 1.0, fixed_points},
    {"quadrature", 2, "Gauss-Chebyshev quadrature oracles", 1.0, quadrature},
    {"contraction", 3, "contraction rate of the Gammahat iteration at 2i", 0.1, contraction},
    {"uniform", 4, "uniform convergence on a compact grid", 0.0, uniform},
    {"truncation", 5, "truncated J0 / Jhat0 m-functions", 2.0, truncation},
    {"wollen", 6, "realization of M^{-1}/(l^2-1) by boldT", 0.0, wollen},
    {"chain", 7, "chain operators realize the Gammahat iterates", 0.0, chain},
    {"kac", 8, "Kac algorithm exactness", 0.0, kac},
    {"hn", 9, "Hn two-path equality and prefix property", 0.0, hn},
    {"kac-canonical", 10, "canonical-system m-function vs closed forms", 1.0, kac_canonical},
    {"kernels", 11, "kernel positivity and the interval-kernel identity", 0.0, kernels},
    {"scheme", 12, "Gammahat scheme on Hamiltonians", 0.0, scheme},
};

std::string describe(const CheckResult& c) {
  std::ostringstream os;
  os << c.name;
  if (!std::isnan(c.value)) os << ": " << format_double(c.value) << " vs " << format_double(c.tolerance);
  if (!c.detail.empty()) os << " (" << c.detail << ")";
  return os.str();
}

}  // namespace

bool SuiteReport::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::vector<CoefficientSet> coefficient_corpus(Index length) {
  const auto n = static_cast<std::size_t>(length);
  std::vector<CoefficientSet> out;
  out.push_back({"Jhat0", std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)});
  CoefficientSet shifted{"a0=1", std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
  if (n > 0) shifted.a[0] = 1.0;
  out.push_back(std::move(shifted));
  CoefficientSet cheb{"J0", std::vector<double>(n, 0.0), std::vector<double>(n, 0.5)};
  if (n > 0) cheb.b[0] = 1.0 / std::sqrt(2.0);
  out.push_back(std::move(cheb));
  Rng rng(4242);
  CoefficientSet rnd{"random", {}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    rnd.a.push_back(rng.uniform(-1.0, 1.0));
    rnd.b.push_back(rng.uniform(0.5, 1.5));
  }
  out.push_back(std::move(rnd));
  return out;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : kSuites) out.emplace_back(s.name);
  return out;
}

SuiteReport run_suite(const std::string& name) {
  for (const auto& s : kSuites) {
    if (name != s.name) continue;
    SuiteReport report{s.name, s.criterion, s.title, {}, 0.0, {}};
    Recorder rec(report);
    const auto start = std::chrono::steady_clock::now();
    try {
      s.run(rec);
    } catch (const std::exception& e) {
      report.error = e.what();
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s.budget > 0.0 && report.error.empty()) rec.below("runtime [s]", report.seconds, s.budget);
    return report;
  }
  std::string known;
  for (const auto& s : kSuites) known += std::string(known.empty() ? "" : ", ") + s.name;
  throw InvalidInput("unknown suite \"" + name + "\"; available: " + known);
}

void print_report(std::ostream& os, const SuiteReport& r) {
  os << "suite " << r.name << " (criterion " << r.criterion << "): " << r.title << "\n";
  for (const auto& c : r.checks) os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << describe(c) << "\n";
  if (!r.error.empty()) os << "  [FAIL] aborted: " << r.error << "\n";
  os << (r.passed() ? "PASS" : "FAIL") << " (" << format_double(std::round(r.seconds * 1e3) / 1e3)
     << " s)\n";
}

std::string summary_line(const SuiteReport& r) {
  std::ostringstream os;
  os << "criterion " << r.criterion << " (" << r.name << "): " << (r.passed() ? "PASS" : "FAIL");
  if (!r.error.empty()) {
    os << "  aborted: " << r.error;
    return os.str();
  }
  const CheckResult* shown = nullptr;
  for (const auto& c : r.checks)
    if (!c.passed) {
      shown = &c;
      break;
    }
  if (!shown && !r.checks.empty()) shown = &r.checks.front();
  if (shown) os << "  " << describe(*shown);
  return os.str();
}

}  // namespace nev
