#pragma once

#include <cstdint>
#include <vector>

#include "asym/companion.hpp"
#include "asym/eigen.hpp"
#include "asym/exp_factor.hpp"

namespace asym {

/// Data of a formal fundamental solution
///   W(t) = T (I + sum_{k=1}^r t^{-k} Ptilde_k) t^R exp(E(t)),
///   E(t)  = sum_{k=0}^r Q_k t^{r+1-k} / (r+1-k),
/// for w' = t^r A(t) w. Everything lives in the eigenbasis of A_0 fixed by
/// T; T is the identity when A_0 arrives already diagonal.
struct Expansion {
  int n = 0;
  int r = 0;
  std::vector<Cx> lambdas;      // diagonal of Q_0, in column order
  std::vector<CMatrix> Q;       // Q[k] diagonal, k = 0..r
  std::vector<CMatrix> Ptilde;  // Ptilde[k-1] = P~_k (zero diagonal), k = 1..r
  CMatrix R;                    // diagonal power-factor exponents
  CMatrix T;
  CMatrix T_inv;
};

/// One column of the formal solution in elementary-function form: the
/// prefactor orders t^0..t^{-r} (order 0 is the unit coordinate column) and
/// the scalar factor t^rho exp(p(t)).
struct AsymptoticColumn {
  int index = 0;
  std::vector<std::vector<Cx>> prefactor;  // prefactor[k][i], k = 0..r
  ExpFactor factor;
};

/// Solve P Q0 - Q0 P = C on the off-diagonal: P[j][m] = C[j][m] /
/// (lambda_m - lambda_j), zero diagonal. The diagonal of C is ignored.
/// Requires pairwise separation above separation_floor(lambdas).
CMatrix solve_offdiag(const std::vector<Cx>& lambdas, const CMatrix& c);

/// Dominant-balance recursion: diagonal corrections Q_1..Q_r, off-diagonal
/// prefactor corrections P~_1..P~_r, and the power-factor diagonal R from the
/// coefficients A_0..A_{r+1}. Missing trailing coefficients are an error
/// unless pad_zero is set.
Expansion compute_expansion(const MatrixSeries& series, bool pad_zero = false);

/// Package each column of the expansion as prefactor + elementary factor.
/// Requires the diagonal of R to be real (oscillatory power factors are not
/// representable in elementary form).
std::vector<AsymptoticColumn> assemble_columns(const Expansion& e);

struct EvaluatedColumn {
  std::vector<Cx> value;
  std::vector<std::uint8_t> overflow;  // per entry
  bool any_overflow() const;
};

struct EvaluatedMatrix {
  CMatrix value;
  std::vector<std::uint8_t> overflow;  // row-major, parallel to value
  bool any_overflow() const;
};

/// Numeric value of one column, T * prefactor(t) * t^rho exp(p(t)),
/// optionally left-scaled by row factors (see row_scaling).
EvaluatedColumn evaluate_column(const Expansion& e, const AsymptoticColumn& col,
                                double t,
                                const std::vector<ExpFactor>* scale_rows = nullptr);

/// Numeric value of the full formal solution matrix at t, columns in
/// expansion order.
EvaluatedMatrix evaluate_matrix(const Expansion& e,
                                const std::vector<AsymptoticColumn>& cols,
                                double t,
                                const std::vector<ExpFactor>* scale_rows = nullptr);

}  // namespace asym
