#include "asym/laurent.hpp"

#include <cmath>

namespace asym {
namespace {

// Integer powers by repeated multiplication; the exponents that show up in
// evaluation loops are tiny, and this beats std::pow handily there.
double ipow(double t, int k) {
  if (k > 16) return std::pow(t, static_cast<double>(k));
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= t;
  return v;
}

}  // namespace

LaurentPoly::LaurentPoly(std::map<int, Cx> terms) : terms_(std::move(terms)) {
  prune();
}

LaurentPoly LaurentPoly::constant(Cx c) { return term(0, c); }

LaurentPoly LaurentPoly::term(int power, Cx coeff) {
  LaurentPoly p;
  if (coeff != Cx{}) p.terms_[power] = coeff;
  return p;
}

void LaurentPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == Cx{}) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

int LaurentPoly::min_power() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no powers");
  return terms_.begin()->first;
}

int LaurentPoly::max_power() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no powers");
  return terms_.rbegin()->first;
}

Cx LaurentPoly::coeff(int power) const {
  const auto it = terms_.find(power);
  return it == terms_.end() ? Cx{} : it->second;
}

void LaurentPoly::set(int power, Cx coeff) {
  if (coeff == Cx{}) {
    terms_.erase(power);
  } else {
    terms_[power] = coeff;
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) set(k, coeff(k) + c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) set(k, coeff(k) - c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Cx s) {
  if (s == Cx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  prune();
  return *this;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly d;
  for (const auto& [k, c] : terms_) {
    if (k == 0) continue;
    d.set(k - 1, static_cast<double>(k) * c);
  }
  return d;
}

LaurentPoly LaurentPoly::shifted_powers(int k) const {
  LaurentPoly s;
  for (const auto& [p, c] : terms_) s.terms_[p + k] = c;
  return s;
}

Cx LaurentPoly::eval(double t) const {
  if (!(t >= 0.0)) {
    throw DomainError("Laurent evaluation requires t > 0");
  }
  if (t == 0.0) {
    // Fine for plain polynomial content; negative powers have no value here.
    if (!terms_.empty() && min_power() < 0) {
      throw DomainError("Laurent evaluation requires t > 0");
    }
    return coeff(0);
  }
  // Horner in t over the non-negative powers, Horner in 1/t over the rest;
  // this keeps per-call cost flat even for high powers.
  Cx plus{}, minus{};
  bool have_plus = false, have_minus = false;
  int prev = 0;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto [k, c] = *it;
    if (k < 0) break;
    if (!have_plus) {
      plus = c;
      have_plus = true;
    } else {
      plus = plus * ipow(t, prev - k) + c;
    }
    prev = k;
  }
  if (have_plus && prev > 0) plus *= ipow(t, prev);

  const double u = 1.0 / t;
  prev = 0;
  for (const auto& [k, c] : terms_) {
    if (k >= 0) break;
    if (!have_minus) {
      minus = c;
      have_minus = true;
    } else {
      minus = minus * ipow(u, k - prev) + c;
    }
    prev = k;
  }
  if (have_minus) minus *= ipow(u, -prev);

  return plus + minus;
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly prod;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      prod.set(ka + kb, prod.coeff(ka + kb) + ca * cb);
    }
  }
  return prod;
}

LaurentPoly operator*(Cx s, LaurentPoly a) { return a *= s; }

std::string to_string(const LaurentPoly& p) {
  if (p.zero()) return "0";
  std::string out;
  for (const auto& [k, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + format_complex(c) + ")";
    if (k == 1) {
      out += " t";
    } else if (k != 0) {
      out += " t^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace asym
