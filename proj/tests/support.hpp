#pragma once

#include <random>
#include <vector>

#include "asym/complex_matrix.hpp"

// Shared helpers for the test suites. Tolerances are always passed at the
// call site so every expectation documents its own accuracy claim.

inline double diff_max(const asym::CMatrix& a, const asym::CMatrix& b) {
  return (a - b).max_abs();
}

inline double cx_dist(asym::Cx a, asym::Cx b) { return std::abs(a - b); }

// Deterministic random matrix with entries in [-1,1] x [-1,1]i.
inline asym::CMatrix random_matrix(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  asym::CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = asym::Cx{u(rng), u(rng)};
  return m;
}
