#pragma once

#include <complex>
#include <vector>

#include "nev/herglotz.hpp"
#include "nev/types.hpp"

namespace testing {

using nev::CMatrix;
using nev::Complex;
using nev::Index;

inline CMatrix scalar(Complex z) { return CMatrix::Constant(1, 1, z); }

/// Non-real point with |Im| in [lo, hi].
inline Complex offaxis(nev::Rng& rng, double re = 2.0, double lo = 0.2, double hi = 2.0) {
  const double im = rng.uniform(lo, hi);
  return {rng.uniform(-re, re), rng.uniform() < 0.5 ? im : -im};
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace testing
