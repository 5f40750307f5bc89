#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "nev/linalg.hpp"
#include "nev/realize.hpp"
#include "nev/specialfn.hpp"
#include "nev/transforms.hpp"

using namespace nev;
using testing::max_abs;
using testing::offaxis;
using testing::scalar;

TEST_SUITE("transforms") {
  TEST_CASE("gamma examples") {
    const Complex z(0.4, 1.3);
    const CMatrix m0 = m0_gamma(z) * CMatrix::Identity(2, 2);
    CHECK(op_norm(gamma(m0, z) - m0) < 1e-14);
    Rng rng(1);
    for (int k = 0; k < 50; ++k) {
      const CMatrix m = rng.complex_matrix(3, 3) + CMatrix::Identity(3, 3);
      const Complex w = offaxis(rng);
      CHECK(op_norm(gamma(gamma(m, w), w) - m) <= 1e-12 * op_norm(m));
    }
    // M = -1/l maps to -l/(l^2 - 1), the zero-operator case of boldT.
    const Complex l(0, 2);
    CHECK(std::abs(gamma(scalar(-1.0 / l), l)(0, 0) + l / (l * l - 1.0)) < 1e-15);
  }

  TEST_CASE("gamma errors and condition flag") {
    CHECK_THROWS_AS(gamma(scalar(1), Complex(1, 0)), DomainError);
    CHECK_THROWS_AS(gamma(CMatrix::Zero(2, 2), Complex(0, 1)), SingularError);
    CMatrix ill = CMatrix::Identity(2, 2);
    ill(1, 1) = 1e-13;
    double cond = 0;
    gamma(ill, Complex(0, 1), &cond);
    CHECK(cond > kIllConditioned);
  }

  TEST_CASE("gamma_hat examples") {
    const Complex z(0, 2);
    CHECK(max_abs(gamma_hat(CMatrix::Zero(3, 3), z) - Complex(0, 0.5) * CMatrix::Identity(3, 3)) < 1e-15);
    const CMatrix m0 = m0_gammahat(z) * CMatrix::Identity(2, 2);
    CHECK(op_norm(gamma_hat(m0, z) - m0) < 1e-15);
    CHECK_THROWS_AS(gamma_hat(scalar(-Complex(0, 2)), z), SingularError);
    Rng rng(2);
    for (int k = 0; k < 200; ++k) {
      const auto f = random_nevanlinna(1000 + std::uint64_t(k), 2, 4);
      const Complex w = offaxis(rng);
      CHECK(op_norm(gamma_hat(evaluate(f, w), w)) <= 1 / std::abs(w.imag()) + 1e-12);
    }
  }

  TEST_CASE("iterate_gamma_hat from zero at 2i") {
    const auto tr = iterate_gamma_hat(RealizedFunction::zero(1), Complex(0, 2), 30);
    const double expected[] = {0.5, 0.4, 5.0 / 12.0, 12.0 / 29.0};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(tr.values[std::size_t(k)](0, 0) - Complex(0, expected[k])) < 1e-15);
    CHECK(tr.residuals[3] < 6e-4);
    CHECK(tr.contraction_holds());
    CHECK(tr.contraction_bound() == 0.25);
    CHECK(tr.residuals.back() < 1e-15);
    CHECK(tr.ratios.size() == tr.residuals.size() - 1);
  }

  TEST_CASE("iteration from random starts reaches the floor") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto tr = iterate_gamma_hat(random_nevanlinna(s, 2, 5), Complex(0.5, 2), 30);
      CHECK(tr.residuals.back() < 1e-15);
      CHECK(tr.contraction_holds());
    }
    CHECK_THROWS_AS(iterate_gamma_hat(RealizedFunction::zero(1), Complex(1, 0), 3), DomainError);
    CHECK_THROWS_AS(iterate_gamma_hat(RealizedFunction::zero(1), Complex(0, 1), 0), InvalidInput);
    // |Im l| <= 1: ratios recorded, bound not asserted.
    CHECK(iterate_gamma_hat(RealizedFunction::zero(1), Complex(0, 0.5), 5).contraction_holds());
  }

  TEST_CASE("fixed_point_residual_all_powers") {
    CHECK(fixed_point_residual_all_powers(Complex(0, 2), 1) < 1e-14);
    CHECK(fixed_point_residual_all_powers(Complex(1, 1), 7) < 1e-12);
    CHECK(fixed_point_residual_all_powers(Complex(0.3, -1.2), 3, 4) < 1e-12);
  }

  TEST_CASE("trace CSV") {
    const auto tr = iterate_gamma_hat(RealizedFunction::zero(1), Complex(0, 2), 3);
    std::ostringstream os;
    write_trace_csv(os, tr);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "n,re_value00,im_value00,residual,ratio");
    std::getline(is, line);
    CHECK(line.rfind("1,", 0) == 0);
    CHECK(line.back() == ',');
  }

  TEST_CASE("property: gamma_hat never singular on Nevanlinna values") {
    Rng rng(31);
    int failures = 0;
    for (int k = 0; k < 10000; ++k) {
      const auto f = random_nevanlinna(std::uint64_t(k % 50), 2, 4);
      const Complex w = offaxis(rng, 3.0, 1e-3, 3.0);
      try {
        gamma_hat(evaluate(f, w), w);
      } catch (const SingularError&) {
        ++failures;
      }
    }
    CHECK(failures == 0);
  }

  TEST_CASE("property: Gamma keeps the interval class") {
    Rng rng(32);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto f = random_nevanlinna(300 + s, 2, 6, {.contraction = true, .isometric = true});
      const auto big = bold_T(as_subspace(f));
      const auto g = RealizedFunction::realization(big.T, big.basis);
      SampleSet smp;
      for (int k = 0; k < 8; ++k) smp.points.push_back(offaxis(rng));
      for (Complex z : smp.points)
        CHECK(max_abs(evaluate(g, z) - gamma(evaluate(f, z), z)) < 1e-10);
      CHECK(is_psd(class_n0_interval_gram(g, smp)));
    }
  }

  TEST_CASE("property: uniform convergence on a compact") {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j)
        worst = std::max(worst, iterate_gamma_hat(RealizedFunction::zero(1), Complex(1 + i / 19.0, 1.5 + j / 19.0), 20)
                                    .residuals.back());
    CHECK(worst < 1e-10);
  }
}
