#include "asym/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace asym {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Horner evaluation of p and p' for descending-degree coefficients.
void eval_poly(const std::vector<Cx>& c, Cx z, Cx& p, Cx& dp) {
  p = c[0];
  dp = Cx{};
  for (std::size_t k = 1; k < c.size(); ++k) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

// Null vector of a square matrix of rank n-1, by Gaussian elimination with
// full pivoting: after n-1 elimination steps the remaining 1x1 block is the
// smallest pivot, and the corresponding permuted variable is the free one.
std::vector<Cx> null_vector(CMatrix u) {
  const int n = u.rows();
  std::vector<int> colperm(n);
  for (int j = 0; j < n; ++j) colperm[j] = j;

  for (int k = 0; k + 1 < n; ++k) {
    int pi = k, pj = k;
    double best = 0.0;
    for (int i = k; i < n; ++i) {
      for (int j = k; j < n; ++j) {
        const double m = std::abs(u(i, j));
        if (m > best) {
          best = m;
          pi = i;
          pj = j;
        }
      }
    }
    if (best == 0.0) {
      throw DegenerateSpectrumError(
          "null space has dimension greater than one; spectrum is degenerate");
    }
    if (pi != k) {
      for (int j = 0; j < n; ++j) std::swap(u(k, j), u(pi, j));
    }
    if (pj != k) {
      for (int i = 0; i < n; ++i) std::swap(u(i, k), u(i, pj));
      std::swap(colperm[k], colperm[pj]);
    }
    for (int i = k + 1; i < n; ++i) {
      const Cx f = u(i, k) / u(k, k);
      u(i, k) = Cx{};
      if (f == Cx{}) continue;
      for (int j = k + 1; j < n; ++j) u(i, j) -= f * u(k, j);
    }
  }

  std::vector<Cx> x(n);
  x[n - 1] = 1.0;
  for (int i = n - 2; i >= 0; --i) {
    Cx acc{};
    for (int j = i + 1; j < n; ++j) acc += u(i, j) * x[j];
    if (u(i, i) == Cx{}) {
      throw DegenerateSpectrumError(
          "rank collapse during null-space solve; spectrum is degenerate");
    }
    x[i] = -acc / u(i, i);
  }

  std::vector<Cx> v(n);
  for (int j = 0; j < n; ++j) v[colperm[j]] = x[j];
  return v;
}

// Unit infinity norm, first maximal-magnitude entry made real and positive.
void normalize_eigenvector(std::vector<Cx>& v) {
  double top = 0.0;
  for (const Cx& z : v) top = std::max(top, std::abs(z));
  if (top == 0.0) {
    throw DegenerateSpectrumError("zero eigenvector candidate");
  }
  int lead = 0;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (std::abs(v[i]) == top) {
      lead = i;
      break;
    }
  }
  const Cx scale = v[lead] / std::abs(v[lead]) * top;
  for (Cx& z : v) z /= scale;
}

}  // namespace

double separation_floor(const std::vector<Cx>& lambdas) {
  double top = 0.0;
  for (const Cx& z : lambdas) top = std::max(top, std::abs(z));
  return 1e-8 * std::max(1.0, top);
}

CMatrix mat_inverse(const CMatrix& a) {
  if (!a.square()) throw DimensionError("mat_inverse requires a square matrix");
  const int n = a.rows();
  const double pivot_floor = 1e-13 * a.norm_inf();

  CMatrix u = a;
  CMatrix inv = CMatrix::identity(n);
  for (int k = 0; k < n; ++k) {
    int pi = k;
    double best = std::abs(u(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double m = std::abs(u(i, k));
      if (m > best) {
        best = m;
        pi = i;
      }
    }
    if (best <= pivot_floor) {
      throw SingularMatrixError("matrix is singular to working precision");
    }
    if (pi != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(u(k, j), u(pi, j));
        std::swap(inv(k, j), inv(pi, j));
      }
    }
    const Cx piv = u(k, k);
    for (int j = 0; j < n; ++j) {
      u(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const Cx f = u(i, k);
      if (f == Cx{}) continue;
      for (int j = 0; j < n; ++j) {
        u(i, j) -= f * u(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::vector<Cx> char_poly(const CMatrix& a) {
  if (!a.square()) throw DimensionError("char_poly requires a square matrix");
  const int n = a.rows();
  if (n > kMaxSpectralDim) {
    throw DimensionError("char_poly is limited to dimension 8");
  }

  // Faddeev-LeVerrier: M_1 = A, c_k = -tr(M_k)/k, M_{k+1} = A (M_k + c_k I).
  std::vector<Cx> c(n + 1);
  c[0] = 1.0;
  CMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    Cx tr{};
    for (int i = 0; i < n; ++i) tr += m(i, i);
    c[k] = -tr / static_cast<double>(k);
    if (k == n) break;
    CMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) += c[k];
    m = a * shifted;
  }
  return c;
}

std::vector<Cx> poly_roots(const std::vector<Cx>& monic) {
  if (monic.size() < 2) {
    throw DomainError("poly_roots requires degree >= 1");
  }
  if (std::abs(monic[0] - Cx{1.0}) > 1e-12) {
    throw DomainError("poly_roots requires a monic polynomial");
  }
  const int d = static_cast<int>(monic.size()) - 1;
  if (d == 1) return {-monic[1]};

  double top_coeff = 0.0;
  for (const Cx& z : monic) top_coeff = std::max(top_coeff, std::abs(z));

  // Deterministic starting ring inside the Cauchy bound, angles offset so no
  // start lands on an axis of a symmetric root pattern.
  const double radius = 0.6 * (1.0 + top_coeff);
  std::vector<Cx> z(d);
  for (int j = 0; j < d; ++j) {
    const double theta = 2.0 * kPi * (j + 0.35) / d + 0.45;
    z[j] = radius * Cx{std::cos(theta), std::sin(theta)};
  }

  const int max_sweeps = 500;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst_step = 0.0;
    for (int i = 0; i < d; ++i) {
      Cx p, dp;
      eval_poly(monic, z[i], p, dp);
      if (p == Cx{}) continue;
      if (dp == Cx{}) {
        z[i] += Cx{1e-8, 1e-8} * (1.0 + std::abs(z[i]));
        worst_step = 1.0;
        continue;
      }
      const Cx newton = p / dp;
      Cx sum{};
      for (int j = 0; j < d; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const Cx denom = 1.0 - newton * sum;
      const Cx step = denom == Cx{} ? newton : newton / denom;
      z[i] -= step;
      worst_step = std::max(worst_step, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (worst_step <= 1e-14) break;
  }

  // A couple of Newton polish steps sharpen simple roots to full precision.
  for (int i = 0; i < d; ++i) {
    for (int it = 0; it < 2; ++it) {
      Cx p, dp;
      eval_poly(monic, z[i], p, dp);
      if (dp == Cx{} || p == Cx{}) break;
      const Cx step = p / dp;
      if (!is_finite(step)) break;
      z[i] -= step;
    }
  }

  const double tol = 1e-10 * top_coeff;
  for (int i = 0; i < d; ++i) {
    Cx p, dp;
    eval_poly(monic, z[i], p, dp);
    if (!(std::abs(p) <= tol)) {
      throw NoConvergenceError("root iteration failed the residual test");
    }
  }
  return z;
}

EigenResult eigen_decompose(const CMatrix& m) {
  if (!m.square()) throw DimensionError("eigen_decompose requires a square matrix");
  const int n = m.rows();
  if (n > kMaxSpectralDim) {
    throw DimensionError("eigen_decompose is limited to dimension 8");
  }

  EigenResult res;
  if (n == 1) {
    res.lambdas = {m(0, 0)};
    res.T = CMatrix::identity(1);
    res.T_inv = CMatrix::identity(1);
    return res;
  }

  res.lambdas = poly_roots(char_poly(m));
  std::sort(res.lambdas.begin(), res.lambdas.end(), [](Cx a, Cx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });

  const double floor = separation_floor(res.lambdas);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(res.lambdas[i] - res.lambdas[j]) <= floor) {
        throw DegenerateSpectrumError(
            "eigenvalues " + format_complex(res.lambdas[i]) + " and " +
            format_complex(res.lambdas[j]) + " collide within separation floor");
      }
    }
  }

  res.T = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    CMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) -= res.lambdas[j];
    std::vector<Cx> v = null_vector(shifted);
    normalize_eigenvector(v);
    for (int i = 0; i < n; ++i) res.T(i, j) = v[i];
  }

  try {
    res.T_inv = mat_inverse(res.T);
  } catch (const SingularMatrixError&) {
    throw DegenerateSpectrumError(
        "eigenvector matrix is numerically singular; spectrum is defective");
  }

  // Distinct, well-separated spectra must reproduce the diagonal form; a
  // failed residual means the spectrum is defective in working precision.
  CMatrix d = res.T_inv * m * res.T;
  for (int i = 0; i < n; ++i) d(i, i) -= res.lambdas[i];
  if (d.norm_inf() > 1e-10 * std::max(1.0, m.norm_inf())) {
    throw DegenerateSpectrumError(
        "eigendecomposition residual check failed; spectrum is numerically defective");
  }

  return res;
}

}  // namespace asym
