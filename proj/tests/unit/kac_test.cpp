#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "nev/jacobi.hpp"
#include "nev/kac.hpp"
#include "nev/suites.hpp"

using namespace nev;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2d mat(double a, double b, double c, double d) {
  Eigen::Matrix2d m;
  m << a, b, c, d;
  return m;
}

double gap(const Eigen::Matrix2d& x, const Eigen::Matrix2d& y) { return (x - y).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("kac") {
  TEST_CASE("Jhat0 coefficients give unit intervals and quarter turns") {
    const auto h = kac_algorithm(std::vector<double>(60, 0.0), std::vector<double>(60, 1.0), 52);
    for (Index j = 0; j <= 50; ++j) {
      CHECK(std::abs(h.length(j) - 1.0) < 1e-12);
      CHECK(std::abs(h.thetas()[std::size_t(j)] - (j + 1) * kPi / 2) < 1e-12);
    }
  }

  TEST_CASE("a_0 = 1 variant by hand") {
    std::vector<double> a(5, 0.0), b(5, 1.0);
    a[0] = 1.0;
    const auto h = kac_algorithm(a, b, 3);
    CHECK(std::abs(h.thetas()[1] - 5 * kPi / 4) < 1e-12);
    CHECK(std::abs(h.length(1) - 2.0) < 1e-12);
    CHECK(std::abs(h.thetas()[2] - 3 * kPi / 2) < 1e-12);
  }

  TEST_CASE("first interval always carries [[0,0],[0,1]]") {
    for (const auto& set : coefficient_corpus(20)) {
      const auto h = kac_algorithm(set.a, set.b, 15);
      CHECK(h.breakpoints()[1] == 1.0);
      CHECK(gap(evaluate_H(h, 0.0), mat(0, 0, 0, 1)) < 1e-15);
      CHECK(gap(evaluate_H(h, 0.999), mat(0, 0, 0, 1)) < 1e-15);
      CHECK(h.kac_normalized());
    }
  }

  TEST_CASE("kac_algorithm input checks") {
    CHECK_THROWS_AS(kac_algorithm({0, 0}, {1, -1}, 3), InvalidInput);
    CHECK_THROWS_AS(kac_algorithm({0}, {1}, 3), InvalidInput);
    CHECK_THROWS_AS(kac_algorithm({}, {}, 0), InvalidInput);
    CHECK(kac_algorithm({}, {}, 1).intervals() == 1);
    // Large but representable cotangents are fine; an overflowing one is degenerate.
    CHECK(kac_algorithm({0, 1e13, 0}, {1, 1, 1}, 3).intervals() == 3);
    CHECK_THROWS_AS(kac_algorithm({0, 1e200, 0}, {1, 1, 1}, 3), InvalidInput);
    CHECK_THROWS_AS(kac_algorithm(build_J0(2, 4), 3), Unsupported);
    CHECK(kac_algorithm(build_J0(1, 4), 4).intervals() == 4);
  }

  TEST_CASE("evaluate_H examples") {
    const StepHamiltonian h({0, 1, 2, 3}, {kPi / 2, kPi, kPi / 4});
    CHECK(gap(evaluate_H(h, 0.5), mat(0, 0, 0, 1)) < 1e-15);
    CHECK(gap(evaluate_H(h, 1.0), mat(1, 0, 0, 0)) < 1e-15);
    CHECK(gap(evaluate_H(h, 2.5), mat(0.5, 0.5, 0.5, 0.5)) < 1e-15);
    CHECK_THROWS_AS(evaluate_H(h, 3.0), DomainError);
    CHECK_THROWS_AS(evaluate_H(h, -0.1), DomainError);
  }

  TEST_CASE("StepHamiltonian structure is validated") {
    CHECK_THROWS_AS(StepHamiltonian({0, 1}, {}), InvalidInput);
    CHECK_THROWS_AS(StepHamiltonian({0.5, 1}, {0}), InvalidInput);
    CHECK_THROWS_AS(StepHamiltonian({0, 2, 1}, {0, 0}), InvalidInput);
    CHECK_THROWS_AS(StepHamiltonian({0, 1, 2}, {0}), InvalidInput);
  }

  TEST_CASE("hamiltonian_H0") {
    const auto h = hamiltonian_H0(30);
    CHECK(gap(evaluate_H(h, 0.2), mat(0, 0, 0, 1)) < 1e-15);
    CHECK(gap(evaluate_H(h, 1.5), mat(1, 0, 0, 0)) < 1e-15);
    CHECK(gap(evaluate_H(h, 2.5), mat(0, 0, 0, 1)) < 1e-15);
    const auto k = kac_algorithm(std::vector<double>(29, 0.0), std::vector<double>(29, 1.0), 30);
    CHECK(k.breakpoints() == h.breakpoints());
    CHECK(k.thetas() == h.thetas());
  }

  TEST_CASE("hamiltonian_Hn") {
    const auto h0 = hamiltonian_H0(20);
    const auto h1 = hamiltonian_Hn(h0, 1);
    CHECK(h1.breakpoints() == hamiltonian_H0(21).breakpoints());
    CHECK(h1.thetas() == hamiltonian_H0(21).thetas());
    CHECK_THROWS_AS(hamiltonian_Hn(h0, 0), InvalidInput);
    CHECK_THROWS_AS(hamiltonian_Hn(StepHamiltonian({0, 2}, {kPi / 2}), 1), InvalidInput);

    for (const auto& set : coefficient_corpus(40)) {
      const auto h = kac_algorithm(set.a, set.b, 30);
      for (Index n = 1; n <= 10; ++n) {
        const auto hn = hamiltonian_Hn(h, n);
        const auto prefix = hn.truncated(n + 1);
        CHECK(prefix.breakpoints() == hamiltonian_H0(n + 1).breakpoints());
        CHECK(prefix.thetas() == hamiltonian_H0(n + 1).thetas());
        const auto [an, bn] = shifted_coefficients(set.a, set.b, n);
        const auto k = kac_algorithm(an, bn, 30 + n);
        REQUIRE(k.intervals() == hn.intervals());
        for (std::size_t j = 0; j < k.thetas().size(); ++j) {
          CHECK(std::abs(k.thetas()[j] - hn.thetas()[j]) < 1e-12);
          CHECK(std::abs(k.breakpoints()[j + 1] - hn.breakpoints()[j + 1]) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("gammahat_hamiltonian") {
    const auto h0 = hamiltonian_H0(25);
    const auto g = gammahat_hamiltonian(h0);
    CHECK(g.breakpoints() == hamiltonian_H0(26).breakpoints());
    CHECK(g.thetas() == hamiltonian_H0(26).thetas());
    CHECK(g.thetas()[0] == kPi / 2);
    CHECK(g.thetas()[1] == kPi);
    for (const auto& set : coefficient_corpus(30)) {
      const auto h = kac_algorithm(set.a, set.b, 25);
      const auto x = gammahat_hamiltonian(h), y = hamiltonian_Hn(h, 1);
      CHECK(x.breakpoints() == y.breakpoints());
      CHECK(x.thetas() == y.thetas());
    }
    // 1 inside an interval: the interval is split there.
    const StepHamiltonian odd({0, 0.5, 3}, {0, 1});
    const auto s = gammahat_hamiltonian(odd);
    CHECK(s.breakpoints() == std::vector<double>{0, 1, 2, 4});
    CHECK(s.thetas()[2] == 1 + kPi / 2);
  }

  TEST_CASE("property: trace-normed, monotone angles, divergent breakpoints") {
    const double eps = 0.1;
    for (const auto& set : coefficient_corpus(400)) {
      const auto h = kac_algorithm(set.a, set.b, 400);
      for (Index j = 0; j < h.intervals(); ++j) {
        const double t = h.breakpoints()[std::size_t(j)];
        const Eigen::Matrix2d m = evaluate_H(h, t);
        CHECK(std::abs(m.trace() - 1.0) <= 1e-15);
        CHECK(std::abs(m.determinant()) <= 1e-15);
        CHECK(m(0, 1) == m(1, 0));
        if (j > 0) {
          const double step = h.thetas()[std::size_t(j)] - h.thetas()[std::size_t(j - 1)];
          // Increments below ulp(theta) round to zero once l_j grows geometrically.
          if (set.name == "random") CHECK(step >= 0.0); else CHECK(step > 0.0);
          CHECK(step < kPi);
        }
      }
      for (Index m : {10, 100, 400}) CHECK(h.breakpoints()[std::size_t(m)] > double(m) * eps);
    }
  }
}
