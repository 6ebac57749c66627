#pragma once

#include "asym/laurent.hpp"

namespace asym {

struct FactorValue {
  Cx value{};
  bool overflow = false;
};

/// Elementary asymptotic factor  scale * t^rho * exp(p(t))  with rho real
/// (possibly non-integer) and p a polynomial in strictly positive powers of
/// t. Evaluation goes through the log-magnitude so the exponential never
/// overflows silently: out-of-range magnitudes are clamped to +/-Inf and
/// flagged in the result.
class ExpFactor {
 public:
  ExpFactor() : scale_(1.0) {}
  ExpFactor(double rho, LaurentPoly p, Cx scale = Cx{1.0});

  double rho() const { return rho_; }
  const LaurentPoly& p() const { return p_; }
  Cx scale() const { return scale_; }

  /// Value at t > 0 with the power part read as t^rho.
  FactorValue eval(double t) const { return eval(t, t); }

  /// Value with the power part read as power_base^rho while p stays a
  /// polynomial in t (the mollifier layer uses base 1+t this way).
  FactorValue eval(double t, double power_base) const;

  /// Logarithmic derivative rho/t + p'(t), exact as a Laurent polynomial.
  /// Only valid for power base t.
  LaurentPoly log_derivative() const;

 private:
  double rho_ = 0.0;
  LaurentPoly p_;
  Cx scale_;
};

}  // namespace asym
