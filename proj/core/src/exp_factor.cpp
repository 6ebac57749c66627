#include "asym/exp_factor.hpp"

#include <cmath>
#include <limits>

namespace asym {
namespace {

// exp() overflows past this for doubles; the symmetric bound guards underflow.
constexpr double kLogHuge = 709.0;
constexpr double kLogTiny = -745.0;

double inf_with_direction(double c) {
  if (c == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), c);
}

}  // namespace

ExpFactor::ExpFactor(double rho, LaurentPoly p, Cx scale)
    : rho_(rho), p_(std::move(p)), scale_(scale) {
  if (!p_.zero() && p_.min_power() <= 0) {
    throw DomainError(
        "exponent polynomial must contain strictly positive powers only");
  }
}

FactorValue ExpFactor::eval(double t, double power_base) const {
  // t = 0 is acceptable when the power base is separately positive (the
  // mollifier layer evaluates base 1+t factors from t = 0).
  if (!(t >= 0.0) || !(power_base > 0.0)) {
    throw DomainError("factor evaluation requires a positive power base");
  }
  const Cx pt = p_.zero() ? Cx{} : p_.eval(t);
  const double log_mag =
      std::log(std::abs(scale_)) + rho_ * std::log(power_base) + pt.real();
  const double phase = std::arg(scale_) + pt.imag();

  FactorValue out;
  if (log_mag > kLogHuge) {
    out.overflow = true;
    out.value = Cx{inf_with_direction(std::cos(phase)),
                   inf_with_direction(std::sin(phase))};
    return out;
  }
  if (log_mag < kLogTiny || scale_ == Cx{}) {
    out.value = Cx{};
    return out;
  }
  const double mag = std::exp(log_mag);
  out.value = Cx{mag * std::cos(phase), mag * std::sin(phase)};
  return out;
}

LaurentPoly ExpFactor::log_derivative() const {
  LaurentPoly g = p_.derivative();
  if (rho_ != 0.0) g += LaurentPoly::term(-1, rho_);
  return g;
}

}  // namespace asym
