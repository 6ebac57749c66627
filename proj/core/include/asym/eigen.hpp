#pragma once

#include <vector>

#include "asym/complex_matrix.hpp"

namespace asym {

/// Spectral work is capped at this dimension; the characteristic-polynomial
/// route is only trustworthy for small matrices.
constexpr int kMaxSpectralDim = 8;

struct EigenResult {
  std::vector<Cx> lambdas;  // sorted: descending real part, ties by descending imaginary part
  CMatrix T;                // columns are the eigenvectors, in lambda order
  CMatrix T_inv;
};

/// Minimum eigenvalue separation below which the spectrum is treated as
/// degenerate: 1e-8 * max(1, max |lambda|).
double separation_floor(const std::vector<Cx>& lambdas);

/// Gauss-Jordan inverse with partial pivoting. Throws SingularMatrixError
/// when a pivot falls at or below 1e-13 * ||a||_inf.
CMatrix mat_inverse(const CMatrix& a);

/// Monic characteristic polynomial det(lambda I - a), coefficients in
/// descending degree (c[0] = 1). Faddeev-LeVerrier recurrence; requires a
/// square matrix with rows <= kMaxSpectralDim.
std::vector<Cx> char_poly(const CMatrix& a);

/// All roots of a monic polynomial given by descending-degree coefficients,
/// via Aberth-Ehrlich simultaneous iteration (deterministic starting points,
/// at most 500 sweeps). Throws NoConvergenceError if residuals fail the
/// |p(root)| <= 1e-10 * max|coeff| test after the iteration budget.
std::vector<Cx> poly_roots(const std::vector<Cx>& monic);

/// Full eigendecomposition for distinct-spectrum matrices: characteristic
/// polynomial -> simultaneous root iteration -> one null-space solve per
/// eigenvalue. Eigenvectors have unit infinity norm with the first
/// maximal-magnitude entry rotated to be real and positive. Throws
/// DegenerateSpectrumError when eigenvalues collide within
/// separation_floor() or the decomposition residual check fails.
EigenResult eigen_decompose(const CMatrix& m);

}  // namespace asym
