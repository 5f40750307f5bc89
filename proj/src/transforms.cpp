#include "nev/transforms.hpp"

#include <cmath>
#include <ostream>

#include "nev/format.hpp"
#include "nev/linalg.hpp"
#include "nev/specialfn.hpp"

namespace nev {

double IterationTrace::contraction_bound() const {
  return 1.0 / (lambda.imag() * lambda.imag());
}

bool IterationTrace::contraction_holds(double floor) const {
  if (std::abs(lambda.imag()) <= 1.0) return true;
  return max_ratio(floor) <= contraction_bound() + 1e-10;
}

double IterationTrace::max_ratio(double floor) const {
  double worst = 0.0;
  for (std::size_t k = 0; k < ratios.size(); ++k)
    if (residuals[k] > floor && residuals[k + 1] > floor) worst = std::max(worst, ratios[k]);
  return worst;
}

IterationTrace iterate_gamma_hat(const CMatrix& start, Complex lambda, Index steps) {
  if (lambda.imag() == 0.0) throw DomainError("iterate_gamma_hat: lambda must be non-real");
  if (steps < 1) throw InvalidInput("iterate_gamma_hat: at least one step required");
  const Index d = start.rows();
  const CMatrix fixed = m0_gammahat(lambda) * CMatrix::Identity(d, d);
  IterationTrace trace{lambda, {}, {}, {}};
  CMatrix current = start;
  for (Index k = 0; k < steps; ++k) {
    current = gamma_hat(current, lambda);
    const double r = op_norm(current - fixed);
    if (!trace.residuals.empty()) {
      const double prev = trace.residuals.back();
      trace.ratios.push_back(prev > 0.0 ? r / prev : 0.0);
    }
    trace.values.push_back(current);
    trace.residuals.push_back(r);
  }
  return trace;
}

IterationTrace iterate_gamma_hat(const RealizedFunction& f, Complex lambda, Index steps) {
  return iterate_gamma_hat(evaluate(f, lambda), lambda, steps);
}

double fixed_point_residual_all_powers(Complex lambda, Index k, Index d) {
  if (lambda.imag() == 0.0) throw DomainError("lambda must be non-real");
  if (k < 1 || d < 1) throw InvalidInput("power and dimension must be positive");
  const CMatrix start = m0_gammahat(lambda) * CMatrix::Identity(d, d);
  CMatrix m = start;
  for (Index j = 0; j < k; ++j) m = gamma_hat(m, lambda);
  return op_norm(m - start);
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace) {
  os << "n,re_value00,im_value00,residual,ratio\n";
  for (std::size_t k = 0; k < trace.values.size(); ++k) {
    const Complex v = trace.values[k](0, 0);
    os << (k + 1) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
       << format_double(trace.residuals[k]) << ',';
    if (k > 0) os << format_double(trace.ratios[k - 1]);
    os << '\n';
  }
}

}  // namespace nev
