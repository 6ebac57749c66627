#include "asym/mollify.hpp"

#include <cmath>

namespace asym {
namespace {

// Comparison with a relative slack so that algebraically equal keys computed
// along different paths still count as ties.
int compare_keys(double a, double b) {
  const double slack = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  if (a > b + slack) return 1;
  if (b > a + slack) return -1;
  return 0;
}

int compare_columns(const AsymptoticColumn& a, const AsymptoticColumn& b) {
  const int top = static_cast<int>(a.prefactor.size());  // r + 1
  for (int power = top; power >= 1; --power) {
    const int c = compare_keys(a.factor.p().coeff(power).real(),
                               b.factor.p().coeff(power).real());
    if (c != 0) return c;
  }
  return compare_keys(a.factor.rho(), b.factor.rho());
}

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

FactorValue Mollifier::value(int i, double t) const {
  return factors[i].eval(t, base_value(t));
}

Cx Mollifier::log_derivative_value(int i, double t) const {
  const ExpFactor& f = factors[i];
  Cx g = f.rho() / base_value(t);
  if (!f.p().zero()) g += f.p().derivative().eval(t);
  return g;
}

Cx Mollifier::ratio(int j, int i, double t) const {
  if (i == j) return Cx{1.0};
  const ExpFactor& fj = factors[j];
  const ExpFactor& fi = factors[i];
  const LaurentPoly dp = fj.p() - fi.p();
  const Cx dpt = dp.zero() ? Cx{} : dp.eval(t);
  const double log_mag = dpt.real() +
                         (fj.rho() - fi.rho()) * std::log(base_value(t)) +
                         std::log(std::abs(fj.scale()) / std::abs(fi.scale()));
  if (log_mag > 709.0) {
    throw DomainError("mollifier component ratio overflows");
  }
  const double phase =
      dpt.imag() + std::arg(fj.scale()) - std::arg(fi.scale());
  const double mag = log_mag < -745.0 ? 0.0 : std::exp(log_mag);
  return Cx{mag * std::cos(phase), mag * std::sin(phase)};
}

std::size_t dominant_column(const std::vector<AsymptoticColumn>& cols) {
  if (cols.empty()) throw DimensionError("no columns to rank");
  std::size_t best = 0;
  for (std::size_t j = 1; j < cols.size(); ++j) {
    if (compare_columns(cols[j], cols[best]) > 0) best = j;
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (j != best && compare_columns(cols[j], cols[best]) == 0) {
      throw TieError("columns " + std::to_string(j) + " and " +
                     std::to_string(best) +
                     " tie through every growth key");
    }
  }
  return best;
}

Mollifier build_mollifier(const Expansion& e,
                          const std::vector<AsymptoticColumn>& cols,
                          MollifierMode mode, PowerBase base) {
  const std::size_t dom = dominant_column(cols);
  const AsymptoticColumn& col = cols[dom];

  Mollifier m;
  m.base = base;
  m.factors.reserve(e.n);

  if (mode == MollifierMode::dominant) {
    for (int i = 0; i < e.n; ++i) {
      m.factors.emplace_back(col.factor.rho(), col.factor.p());
    }
    return m;
  }

  // Leading behaviour of each component of the dominant column in the
  // original basis: entry power rho - k at the first order k whose
  // coefficient survives.
  std::vector<std::vector<Cx>> orders(col.prefactor.size());
  double top = 0.0;
  for (std::size_t k = 0; k < col.prefactor.size(); ++k) {
    orders[k] = e.T * col.prefactor[k];
    for (const Cx& z : orders[k]) top = std::max(top, std::abs(z));
  }
  const double floor = 1e-12 * top;

  for (int i = 0; i < e.n; ++i) {
    double rho = col.factor.rho();
    for (std::size_t k = 0; k < orders.size(); ++k) {
      if (std::abs(orders[k][i]) > floor) {
        rho -= static_cast<double>(k);
        break;
      }
    }
    m.factors.emplace_back(rho, col.factor.p());
  }
  return m;
}

std::vector<LaurentPoly> log_derivative_ratios(const LaurentPoly& g, int n) {
  if (n < 0) throw DomainError("derivative order must be >= 0");
  std::vector<LaurentPoly> h(n + 1);
  h[0] = LaurentPoly::constant(1.0);
  for (int k = 0; k < n; ++k) {
    h[k + 1] = h[k].derivative() + g * h[k];
  }
  return h;
}

std::vector<LaurentPoly> expand_operator(const ScalarOperator& op) {
  op.validate();
  std::vector<LaurentPoly> b(op.n + 1);
  b[op.n] = LaurentPoly::constant(1.0);
  for (int j = 1; j <= op.n; ++j) {
    b[op.n - j] = op.a[j - 1].shifted_powers(op.r * j);
  }
  return b;
}

std::vector<LaurentPoly> mollify_scalar(const std::vector<LaurentPoly>& coeffs,
                                        const ExpFactor& phi) {
  if (coeffs.empty()) throw MalformedOperatorError("empty coefficient list");
  const int n = static_cast<int>(coeffs.size()) - 1;
  const std::vector<LaurentPoly> h =
      log_derivative_ratios(phi.log_derivative(), n);

  std::vector<LaurentPoly> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int d = i; d <= n; ++d) {
      if (coeffs[d].zero()) continue;
      c[i] += binomial(d, i) * (coeffs[d] * h[d - i]);
    }
  }
  return c;
}

void MollifiedSystem::rhs(double tau, CMatrix& out) const {
  const double t = tau + shift;
  series.eval_scaled(t, out);
  const int dim = series.n;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (i == j || out(i, j) == Cx{}) continue;
      out(i, j) *= m.ratio(j, i, t);
    }
  }
  for (int i = 0; i < dim; ++i) {
    out(i, i) -= m.log_derivative_value(i, t);
  }
}

FactorValue MollifiedSystem::factor_value(int i, double tau) const {
  return m.value(i, tau + shift);
}

MollifiedSystem mollify_system(const MatrixSeries& series, const Mollifier& m) {
  series.validate();
  if (m.n() != series.n) {
    throw DimensionError("mollifier size does not match the system");
  }
  return MollifiedSystem{series, m, 0.0};
}

void MollifiedScalar::rhs(double tau, CMatrix& out) const {
  const double t = tau + shift;
  if (out.rows() != n || out.cols() != n) {
    out = CMatrix(n, n);
  } else {
    out.set_zero();
  }
  for (int i = 0; i + 1 < n; ++i) out(i, i + 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    out(n - 1, i) = -coeffs[i].eval(t);
  }
}

FactorValue MollifiedScalar::phi_value(double tau) const {
  const double t = tau + shift;
  return phi.eval(t, t);
}

MollifiedScalar mollify_scalar_operator(const ScalarOperator& op,
                                        const ExpFactor& phi) {
  MollifiedScalar out;
  out.n = op.n;
  out.coeffs = mollify_scalar(expand_operator(op), phi);
  out.phi = phi;
  return out;
}

MollifiedScalar shift_variable(MollifiedScalar sc, double q) {
  sc.shift += q;
  return sc;
}

MollifiedSystem shift_variable(MollifiedSystem sys, double q) {
  sys.shift += q;
  return sys;
}

}  // namespace asym
