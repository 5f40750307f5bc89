#pragma once

// Named acceptance suites. Each suite runs a fixed, seeded experiment and
// reports every assertion with its measured value and pinned tolerance.

#include <iosfwd>
#include <string>
#include <vector>

#include "nev/types.hpp"

namespace nev {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< measured quantity (NaN for boolean checks)
  double tolerance = 0.0;  ///< bound the value is compared against
  std::string detail;
};

struct SuiteReport {
  std::string name;
  int criterion = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  std::string error;  ///< set when the suite aborted with an exception

  bool passed() const;
};

/// Scalar Jacobi coefficients shared by tests and suites.
struct CoefficientSet {
  std::string name;
  std::vector<double> a;
  std::vector<double> b;
};

/// Jhat0, the a_0 = 1 variant, J0 and a seeded bounded random set, each of
/// the given length.
std::vector<CoefficientSet> coefficient_corpus(Index length);

/// Suite names in criterion order.
std::vector<std::string> suite_names();

/// Runs one suite. InvalidInput for an unknown name.
SuiteReport run_suite(const std::string& name);

/// Multi-line report: a header, one line per check, a verdict.
void print_report(std::ostream& os, const SuiteReport& r);

/// "criterion N (name): PASS|FAIL  worst check ..." on one line.
std::string summary_line(const SuiteReport& r);

}  // namespace nev
