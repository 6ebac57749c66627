#pragma once

#include <vector>

#include "asym/companion.hpp"
#include "asym/expansion.hpp"

namespace asym {

/// Power base used by mollifier factors: plain t (natural away from the
/// origin) or 1+t (regular at t = 0).
enum class PowerBase { t, one_plus_t };

enum class MollifierMode {
  per_column,  // one factor per component, powers from the dominant column
  dominant,    // a single shared factor (the scalar-problem choice)
};

/// Diagonal change of variables w_i = m_i(t) u_i with elementary factors
/// m_i(t) = base^{rho_i} exp(p_i(t)).
struct Mollifier {
  std::vector<ExpFactor> factors;
  PowerBase base = PowerBase::one_plus_t;

  int n() const { return static_cast<int>(factors.size()); }
  double base_value(double t) const {
    return base == PowerBase::t ? t : 1.0 + t;
  }

  FactorValue value(int i, double t) const;

  /// m_i'(t) / m_i(t) = rho_i / base(t) + p_i'(t).
  Cx log_derivative_value(int i, double t) const;

  /// m_j(t) / m_i(t), evaluated through exponent differences so the quotient
  /// never overflows when the factors share their exponential part.
  Cx ratio(int j, int i, double t) const;
};

/// Index of the column with the fastest growth, largest exponent polynomial
/// coefficients first (top power downwards, real parts), then the power
/// exponent rho. Throws TieError when two columns compare equal throughout.
std::size_t dominant_column(const std::vector<AsymptoticColumn>& cols);

/// Componentwise mollifier from a computed expansion. In per_column mode each
/// component gets the dominant column's exponential with the power adjusted
/// by that component's leading prefactor order; in dominant mode every
/// component shares the dominant column's factor unchanged.
Mollifier build_mollifier(const Expansion& e,
                          const std::vector<AsymptoticColumn>& cols,
                          MollifierMode mode, PowerBase base);

/// Ratios h_k = phi^(k) / phi for a factor with logarithmic derivative g:
/// h_0 = 1, h_{k+1} = h_k' + g h_k. Returns h_0..h_n.
std::vector<LaurentPoly> log_derivative_ratios(const LaurentPoly& g, int n);

/// Expanded coefficient list b_0..b_n of a scalar operator, b_i multiplying
/// y^(i) (so b_n = 1 and b_{n-j} = t^{rj} a_j).
std::vector<LaurentPoly> expand_operator(const ScalarOperator& op);

/// Conjugated coefficients c_0..c_n of the operator y -> L(phi y)/phi,
/// computed exactly through the Leibniz rule:
///   c_i = sum_j b_j * binom(d_j, i) * h_{d_j - i}.
/// phi must use power base t so its logarithmic derivative stays a Laurent
/// polynomial.
std::vector<LaurentPoly> mollify_scalar(const std::vector<LaurentPoly>& coeffs,
                                        const ExpFactor& phi);

/// System w' = t^r A(t) w rewritten for u = m^{-1} w:
///   u' = B(t) u,  B_ij = (t^r A)_ij m_j/m_i - delta_ij m_i'/m_i.
/// An optional shift evaluates everything at t = tau + q.
struct MollifiedSystem {
  MatrixSeries series;
  Mollifier m;
  double shift = 0.0;

  int n() const { return series.n; }
  void rhs(double tau, CMatrix& out) const;

  /// Reconstruction factor m_i at shifted time.
  FactorValue factor_value(int i, double tau) const;
};

MollifiedSystem mollify_system(const MatrixSeries& series, const Mollifier& m);

/// Scalar operator conjugated by a single factor phi, integrated as the
/// plain first-order system in (y, y', ..., y^(n-1)).
struct MollifiedScalar {
  int n = 0;
  std::vector<LaurentPoly> coeffs;  // c_0..c_n of the conjugated operator
  ExpFactor phi;
  double shift = 0.0;

  void rhs(double tau, CMatrix& out) const;
  FactorValue phi_value(double tau) const;
};

MollifiedScalar mollify_scalar_operator(const ScalarOperator& op,
                                        const ExpFactor& phi);

/// Change of variables t = tau + q; repeated shifts accumulate.
MollifiedSystem shift_variable(MollifiedSystem sys, double q);
MollifiedScalar shift_variable(MollifiedScalar sc, double q);

}  // namespace asym
