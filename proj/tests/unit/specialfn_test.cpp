#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nev/specialfn.hpp"

using namespace nev;
using testing::offaxis;

TEST_SUITE("specialfn") {
  TEST_CASE("sqrt_offcut examples") {
    CHECK(std::abs(sqrt_offcut(Complex(0, 2), 1.0) - Complex(0, std::sqrt(5.0))) < 1e-14);
    CHECK(std::abs(sqrt_offcut(Complex(0, 2), 2.0) - Complex(0, std::sqrt(8.0))) < 1e-14);
    const Complex r = sqrt_offcut(Complex(3, 0), 1.0);
    CHECK(r.real() == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
    CHECK(r.imag() == 0.0);
    CHECK(sqrt_offcut(Complex(-3, 0), 1.0).real() < 0.0);  // asymptotic to z
  }

  TEST_CASE("points on or near the cut are rejected") {
    CHECK_THROWS_AS(sqrt_offcut(Complex(0.5, 0), 1.0), DomainError);
    CHECK_THROWS_AS(sqrt_offcut(Complex(1.0, 1e-13), 1.0), DomainError);
    CHECK_THROWS_AS(m0_gamma(Complex(0.0, 0.0)), DomainError);
    CHECK_THROWS_AS(m0_gammahat(Complex(-2.0, 0.0)), DomainError);
    CHECK_THROWS_AS(sqrt_offcut(Complex(3, 0), -1.0), DomainError);
    CHECK_NOTHROW(sqrt_offcut(Complex(1.0, 1e-11), 1.0));
  }

  TEST_CASE("m0_gamma examples") {
    CHECK(std::abs(m0_gamma(Complex(0, 2)) - Complex(0, 1 / std::sqrt(5.0))) < 1e-15);
    CHECK(std::abs(m0_gamma(Complex(3, 0)) - Complex(-1 / std::sqrt(8.0), 0)) < 1e-15);
    const double y = 1e6;
    CHECK(std::abs(Complex(0, y) * m0_gamma(Complex(0, y)) + 1.0) < 1e-9);
  }

  TEST_CASE("m0_gammahat examples") {
    CHECK(std::abs(m0_gammahat(Complex(0, 2)) - Complex(0, std::sqrt(2.0) - 1)) < 1e-15);
    const Complex v = m0_gammahat(Complex(1, 1));
    CHECK(v.real() == doctest::Approx(-0.2571).epsilon(1e-3));
    CHECK(v.imag() == doctest::Approx(0.5291).epsilon(1e-3));
    for (Complex z : {Complex(0, 2), Complex(1, 1), Complex(-3, 0.1), Complex(100, -50)}) {
      const Complex m = m0_gammahat(z);
      CHECK(std::abs(m + 1.0 / (m + z)) < 1e-14);
    }
    // No cancellation at large |z|: z m -> -1.
    const Complex big(1e9, 1e9);
    CHECK(std::abs(big * m0_gammahat(big) + 1.0) < 1e-12);
  }

  TEST_CASE("property: branch consistency, symmetry, Herglotz sign, fixed points") {
    Rng rng(11);
    for (int k = 0; k < 1000; ++k) {
      const Complex z = offaxis(rng, 5.0, 1e-3, 5.0);
      for (double c : {1.0, 2.0}) {
        const Complex s = sqrt_offcut(z, c);
        CHECK(std::abs(s * s - (z * z - c * c)) <= 1e-13 * std::abs(z * z - c * c) + 1e-300);
        CHECK(std::abs(sqrt_offcut(std::conj(z), c) - std::conj(s)) <= 1e-15 * std::abs(s));
      }
      const Complex g = m0_gamma(z), h = m0_gammahat(z);
      CHECK(std::abs(m0_gamma(std::conj(z)) - std::conj(g)) <= 1e-15 * std::abs(g));
      CHECK(std::abs(m0_gammahat(std::conj(z)) - std::conj(h)) <= 1e-15 * std::abs(h));
      CHECK(g.imag() * z.imag() > 0.0);
      CHECK(h.imag() * z.imag() > 0.0);
      CHECK(std::abs(g * g * (z * z - 1.0) - 1.0) < 1e-12);
      CHECK(std::abs(h * h + z * h + 1.0) < 1e-12);
    }
  }
}
