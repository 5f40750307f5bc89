#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nev/jacobi.hpp"
#include "nev/specialfn.hpp"
#include "nev/transforms.hpp"

using namespace nev;
using testing::max_abs;
using testing::offaxis;
using testing::scalar;

namespace {

BlockJacobi random_jacobi(Rng& rng, Index d, Index n) {
  std::vector<CMatrix> a, b;
  for (Index k = 0; k < n; ++k) a.push_back(rng.hermitian(d));
  for (Index k = 0; k + 1 < n; ++k) {
    if (d == 1)
      b.push_back(CMatrix::Constant(1, 1, rng.uniform(0.5, 1.5)));
    else
      b.push_back(rng.complex_matrix(d, d) + 2.0 * CMatrix::Identity(d, d));
  }
  return BlockJacobi(a, b);
}

}  // namespace

TEST_SUITE("jacobi") {
  TEST_CASE("build_J0 entries and limit") {
    const auto j = build_J0(1, 3);
    CHECK(j.scalar_diagonal() == std::vector<double>{0, 0, 0});
    CHECK(j.scalar_off_diagonal()[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-16));
    CHECK(j.scalar_off_diagonal()[1] == 0.5);
    const auto j2 = build_J0(2, 2);
    CHECK(max_abs(j2.off_diagonal()[0] - CMatrix::Identity(2, 2) / std::sqrt(2.0)) == 0.0);
    CHECK(std::abs(m_resolvent(build_J0(1, 400), Complex(0, 2))(0, 0) - m0_gamma(Complex(0, 2))) < 1e-10);
    CHECK_THROWS_AS(build_J0(1, 1), InvalidInput);
  }

  TEST_CASE("build_Jhat0 entries and limit") {
    CMatrix expected(2, 2);
    expected << 0, 1, 1, 0;
    CHECK(build_Jhat0(1, 2).dense() == expected);
    CHECK(std::abs(m_resolvent(build_Jhat0(1, 2), Complex(0, 2))(0, 0) - Complex(0, 0.4)) < 1e-15);
    const Complex z(1, 2);
    CHECK(std::abs(m_resolvent(build_Jhat0(1, 200), z)(0, 0) - m0_gammahat(z)) < 1e-8);
    CHECK_THROWS_AS(build_Jhat0(0, 3), InvalidInput);
  }

  TEST_CASE("m_resolvent examples") {
    const auto one = BlockJacobi::scalar({0.0}, {});
    CHECK(std::abs(m_resolvent(one, Complex(0, 1))(0, 0) - Complex(0, 1)) < 1e-15);
    Rng rng(4);
    const auto j = random_jacobi(rng, 2, 8);
    const Complex z(0.3, 0.8);
    CHECK(max_abs(m_resolvent(j, std::conj(z)) - m_resolvent(j, z).adjoint()) < 1e-13);
  }

  TEST_CASE("poles") {
    CHECK_THROWS_AS(m_resolvent(build_Jhat0(1, 2), Complex(1, 0)), PoleError);
    CHECK_THROWS_AS(m_cf(build_Jhat0(1, 2), Complex(1, 0)), PoleError);
  }

  TEST_CASE("construction is validated") {
    CHECK_THROWS_AS(BlockJacobi::scalar({0, 0}, {-1.0}), InvalidInput);
    CHECK_THROWS_AS(BlockJacobi::scalar({0, 0}, {1.0, 1.0}), InvalidInput);
    CMatrix nonherm(1, 1);
    nonherm << Complex(0, 1);
    CHECK_THROWS_AS(BlockJacobi({nonherm}, {}), InvalidInput);
    CHECK_THROWS_AS(BlockJacobi({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)}, {CMatrix::Zero(2, 2)}), InvalidInput);
    CHECK_THROWS_AS(build_J0(2, 3).scalar_diagonal(), Unsupported);
  }

  TEST_CASE("m_cf examples") {
    const Complex z(0, 2);
    CHECK(std::abs(m_cf(BlockJacobi::scalar({0}, {}), z)(0, 0) - Complex(0, 0.5)) < 1e-15);
    CHECK(std::abs(m_cf(build_Jhat0(1, 2), z)(0, 0) - Complex(0, 0.4)) < 1e-15);
    CHECK(std::abs(m_cf(build_Jhat0(1, 3), z)(0, 0) - Complex(0, 5.0 / 12.0)) < 1e-15);
    const auto one = BlockJacobi::scalar({0.7}, {});
    CHECK(std::abs(m_cf(one, Complex(1, 1))(0, 0) + 1.0 / (Complex(1, 1) - 0.7)) < 1e-15);
  }

  TEST_CASE("m_cf agrees with m_resolvent on random J") {
    Rng rng(8);
    for (Index d : {1, 2, 3}) {
      const auto j = random_jacobi(rng, d, 12);
      for (int k = 0; k < 100; ++k) {
        const Complex z = offaxis(rng, 3.0, 0.1, 3.0);
        const CMatrix a = m_resolvent(j, z);
        CHECK(max_abs(a - m_cf(j, z)) <= 1e-12 * (1 + max_abs(a)));
      }
    }
  }

  TEST_CASE("quadrature_m0 examples") {
    const Complex z(0, 2);
    CHECK(std::abs(quadrature_m0(z, 10000, ChebyshevKind::First) - m0_gamma(z)) < 1e-10);
    CHECK(std::abs(quadrature_m0(z, 10000, ChebyshevKind::Second) - m0_gammahat(z)) < 1e-10);
    const double y = 1e3;
    CHECK(std::abs(quadrature_m0(Complex(0, y), 10000, ChebyshevKind::First) - Complex(0, 1 / y)) < 1e-9);
    CHECK_THROWS_AS(quadrature_m0(Complex(0.5, 0), 100, ChebyshevKind::First), DomainError);
  }

  TEST_CASE("property: Jhat0 fraction equals the Gammahat iterates of zero") {
    Rng rng(12);
    for (Index d : {1, 3})
      for (int k = 0; k < 10; ++k) {
        const Complex z = offaxis(rng);
        const auto tr = iterate_gamma_hat(RealizedFunction::zero(d), z, 12);
        for (Index n = 2; n <= 12; ++n)
          CHECK(max_abs(m_cf(build_Jhat0(d, n), z) - tr.values[std::size_t(n - 1)]) < 1e-12);
      }
  }

  TEST_CASE("property: corner embedding") {
    for (Index n = 2; n < 8; ++n) {
      const CMatrix small = build_J0(2, n).dense();
      CHECK(build_J0(2, n + 1).dense().topLeftCorner(2 * n, 2 * n) == small);
      CHECK(build_J0(2, n + 4).truncated(n).dense() == small);
    }
  }

  TEST_CASE("property: Chebyshev recurrence regenerates J0") {
    // Orthonormal first-kind polynomials p_0 = 1, p_k = sqrt2 T_k satisfy
    // t p_k = b_{k-1} p_{k-1} + a_k p_k + b_k p_{k+1}; solve for b_k.
    const auto j = build_J0(1, 12);
    const double t = 0.37;
    const double th = std::acos(t);
    auto p = [&](int k) { return k == 0 ? 1.0 : std::sqrt(2.0) * std::cos(k * th); };
    double prev_b = 0.0;
    for (int k = 0; k < 11; ++k) {
      const double b = (t * p(k) - (k > 0 ? prev_b * p(k - 1) : 0.0)) / p(k + 1);
      CHECK(b == doctest::Approx(j.scalar_off_diagonal()[std::size_t(k)]).epsilon(1e-12));
      prev_b = b;
    }
  }

  TEST_CASE("property: truncation convergence is monotone") {
    const Complex z(1, 2);
    double prev = 1.0;
    for (Index n = 10; n <= 200; n += 5) {
      const double e = std::abs(m_resolvent(build_Jhat0(1, n), z)(0, 0) - m0_gammahat(z));
      if (prev > 1e-14) CHECK(e <= prev);
      prev = e;
    }
    CHECK(prev < 1e-8);
  }
}
