#pragma once

#include <map>

#include "asym/complex_matrix.hpp"

namespace asym {

/// Finite complex linear combination of integer powers of t (negative powers
/// allowed). Zero coefficients are never stored, so `terms().empty()` is the
/// canonical zero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, Cx> terms);

  static LaurentPoly constant(Cx c);
  static LaurentPoly term(int power, Cx coeff);

  const std::map<int, Cx>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  /// Smallest / largest stored power; DomainError on the zero polynomial.
  int min_power() const;
  int max_power() const;

  /// Coefficient of t^power (zero when absent).
  Cx coeff(int power) const;

  void set(int power, Cx coeff);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(Cx s);

  LaurentPoly derivative() const;

  /// Shift every power by k (multiplication by t^k).
  LaurentPoly shifted_powers(int k) const;

  /// Evaluate at real t > 0 (negative powers make t <= 0 ill-defined).
  Cx eval(double t) const;

  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

 private:
  std::map<int, Cx> terms_;

  void prune();
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(Cx s, LaurentPoly a);

/// Human-readable rendering like "1 - 3 t^-1" (ascending powers).
std::string to_string(const LaurentPoly& p);

}  // namespace asym
