#pragma once

#include <vector>

#include "asym/exp_factor.hpp"
#include "asym/integrate.hpp"
#include "asym/laurent.hpp"

namespace asym {

/// Scalar operator
///   y^(n) + t^r a_1(t) y^(n-1) + t^{2r} a_2(t) y^(n-2) + ... + t^{nr} a_n(t) y
/// with each a_j a Laurent polynomial in non-positive powers of t.
struct ScalarOperator {
  int n = 0;  // order
  int r = 0;  // rank of the singularity
  std::vector<LaurentPoly> a;  // a[j-1] = a_j for j = 1..n

  void validate() const;
};

/// First-order system w' = t^r A(t) w with A(t) = sum_j t^{-j} A[j].
struct MatrixSeries {
  int n = 0;
  int r = 0;
  std::vector<CMatrix> A;  // A[j] for j = 0..J

  void validate() const;

  /// Numeric value of t^r A(t); zero coefficients never touch t, so entries
  /// with vanishing deep terms stay clean even at small t.
  void eval_scaled(double t, CMatrix& out) const;
};

/// Companion reduction in the scaled variables w_j = t^{-r(j-1)} y^(j-1).
/// The result keeps coefficients through order max(r+1, deepest a_j power).
MatrixSeries scalar_to_system(const ScalarOperator& op);

/// Diagonal factors S = diag(t^{r(k-1)}) turning system columns back into
/// scalar-solution derivative columns.
std::vector<ExpFactor> row_scaling(int n, int r);

/// Map a trajectory of the companion state w back to (y, y', ..., y^(n-1)).
Trajectory reconstruct_scalar(const Trajectory& w_traj, int r);

}  // namespace asym
