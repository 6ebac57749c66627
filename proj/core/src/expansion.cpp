#include "asym/expansion.hpp"

#include <cmath>
#include <limits>

namespace asym {
namespace {

constexpr double kLogHuge = 709.0;
constexpr double kLogTiny = -745.0;

double inf_with_direction(double c) {
  if (c == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), c);
}

void check_distinct(const std::vector<Cx>& lambdas) {
  const double floor = separation_floor(lambdas);
  const int n = static_cast<int>(lambdas.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(lambdas[i] - lambdas[j]) <= floor) {
        throw DegenerateSpectrumError(
            "eigenvalues " + format_complex(lambdas[i]) + " and " +
            format_complex(lambdas[j]) + " collide within separation floor");
      }
    }
  }
}

}  // namespace

bool EvaluatedColumn::any_overflow() const {
  for (auto f : overflow) {
    if (f) return true;
  }
  return false;
}

bool EvaluatedMatrix::any_overflow() const {
  for (auto f : overflow) {
    if (f) return true;
  }
  return false;
}

CMatrix solve_offdiag(const std::vector<Cx>& lambdas, const CMatrix& c) {
  const int n = static_cast<int>(lambdas.size());
  if (!c.square() || c.rows() != n) {
    throw DimensionError("commutator right-hand side must be n x n");
  }
  check_distinct(lambdas);
  CMatrix p(n, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      if (j == m) continue;
      p(j, m) = c(j, m) / (lambdas[m] - lambdas[j]);
    }
  }
  return p;
}

Expansion compute_expansion(const MatrixSeries& series, bool pad_zero) {
  series.validate();
  const int n = series.n;
  const int r = series.r;
  if (n > kMaxSpectralDim) {
    throw DimensionError("expansion is limited to dimension 8");
  }

  std::vector<CMatrix> a(series.A);
  if (static_cast<int>(a.size()) < r + 2) {
    if (!pad_zero) {
      throw TruncatedSeriesError(
          "series must supply coefficients through order r+1 = " +
          std::to_string(r + 1) + " (or request zero padding)");
    }
    a.resize(r + 2, CMatrix(n, n));
  }

  Expansion e;
  e.n = n;
  e.r = r;

  // An already-diagonal leading coefficient keeps its given order; otherwise
  // the deterministic eigenvalue order of the decomposition fixes the basis.
  if (a[0].is_diagonal()) {
    e.lambdas = a[0].diag();
    check_distinct(e.lambdas);
    e.T = CMatrix::identity(n);
    e.T_inv = e.T;
  } else {
    EigenResult eig = eigen_decompose(a[0]);
    e.lambdas = std::move(eig.lambdas);
    e.T = std::move(eig.T);
    e.T_inv = std::move(eig.T_inv);
  }

  std::vector<CMatrix> b(r + 2, CMatrix(n, n));
  b[0] = CMatrix::diagonal(e.lambdas);
  for (int j = 1; j <= r + 1; ++j) {
    b[j] = e.T_inv * a[j] * e.T;
  }

  e.Q.assign(r + 1, CMatrix(n, n));
  e.Q[0] = b[0];
  e.Ptilde.assign(r, CMatrix(n, n));

  for (int k = 1; k <= r; ++k) {
    CMatrix s = b[k];
    for (int l = 1; l < k; ++l) {
      s += b[l] * e.Ptilde[k - l - 1] - e.Ptilde[k - l - 1] * e.Q[l];
    }
    e.Q[k] = diag_of(s);
    e.Ptilde[k - 1] = solve_offdiag(e.lambdas, s);
  }

  CMatrix pre_r = b[r + 1];
  for (int l = 1; l <= r; ++l) {
    pre_r += b[l] * e.Ptilde[r - l] - e.Ptilde[r - l] * e.Q[l];
  }
  e.R = diag_of(pre_r);

  return e;
}

std::vector<AsymptoticColumn> assemble_columns(const Expansion& e) {
  std::vector<AsymptoticColumn> cols;
  cols.reserve(e.n);
  for (int j = 0; j < e.n; ++j) {
    AsymptoticColumn col;
    col.index = j;

    const Cx rho = e.R(j, j);
    if (std::abs(rho.imag()) > 1e-8 * std::max(1.0, std::abs(rho))) {
      throw DomainError(
          "power exponent " + format_complex(rho) +
          " has a nontrivial imaginary part; not representable in elementary form");
    }

    LaurentPoly p;
    for (int k = 0; k <= e.r; ++k) {
      const int power = e.r + 1 - k;
      p.set(power, e.Q[k](j, j) / static_cast<double>(power));
    }
    col.factor = ExpFactor(rho.real(), std::move(p));

    col.prefactor.assign(e.r + 1, std::vector<Cx>(e.n, Cx{}));
    col.prefactor[0][j] = 1.0;
    for (int k = 1; k <= e.r; ++k) {
      for (int i = 0; i < e.n; ++i) {
        col.prefactor[k][i] = e.Ptilde[k - 1](i, j);
      }
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

EvaluatedColumn evaluate_column(const Expansion& e, const AsymptoticColumn& col,
                                double t,
                                const std::vector<ExpFactor>* scale_rows) {
  if (!(t > 0.0)) throw DomainError("column evaluation requires t > 0");
  if (scale_rows && static_cast<int>(scale_rows->size()) != e.n) {
    throw DimensionError("row scaling size does not match the system");
  }

  // Rational prefactor in the eigenbasis, then back to the original basis.
  std::vector<Cx> x(e.n, Cx{});
  double tk = 1.0;
  for (std::size_t k = 0; k < col.prefactor.size(); ++k) {
    for (int i = 0; i < e.n; ++i) x[i] += col.prefactor[k][i] * tk;
    tk /= t;
  }
  std::vector<Cx> y = e.T * x;

  const Cx pt = col.factor.p().zero() ? Cx{} : col.factor.p().eval(t);
  const double log_t = std::log(t);
  const double base_log = col.factor.rho() * log_t + pt.real() +
                          std::log(std::abs(col.factor.scale()));
  const double base_phase = pt.imag() + std::arg(col.factor.scale());

  EvaluatedColumn out;
  out.value.assign(e.n, Cx{});
  out.overflow.assign(e.n, 0);
  for (int i = 0; i < e.n; ++i) {
    double lm = base_log;
    double ph = base_phase;
    if (scale_rows) {
      const ExpFactor& s = (*scale_rows)[i];
      const Cx sp = s.p().zero() ? Cx{} : s.p().eval(t);
      lm += s.rho() * log_t + sp.real() + std::log(std::abs(s.scale()));
      ph += sp.imag() + std::arg(s.scale());
    }
    if (y[i] == Cx{}) continue;
    lm += std::log(std::abs(y[i]));
    ph += std::arg(y[i]);
    if (lm > kLogHuge) {
      out.overflow[i] = 1;
      out.value[i] = Cx{inf_with_direction(std::cos(ph)),
                       inf_with_direction(std::sin(ph))};
    } else if (lm < kLogTiny) {
      out.value[i] = Cx{};
    } else {
      const double mag = std::exp(lm);
      out.value[i] = Cx{mag * std::cos(ph), mag * std::sin(ph)};
    }
  }
  return out;
}

EvaluatedMatrix evaluate_matrix(const Expansion& e,
                                const std::vector<AsymptoticColumn>& cols,
                                double t,
                                const std::vector<ExpFactor>* scale_rows) {
  if (static_cast<int>(cols.size()) != e.n) {
    throw DimensionError("column count does not match the system dimension");
  }
  EvaluatedMatrix out;
  out.value = CMatrix(e.n, e.n);
  out.overflow.assign(static_cast<std::size_t>(e.n) * e.n, 0);
  for (int j = 0; j < e.n; ++j) {
    EvaluatedColumn c = evaluate_column(e, cols[j], t, scale_rows);
    for (int i = 0; i < e.n; ++i) {
      out.value(i, j) = c.value[i];
      out.overflow[static_cast<std::size_t>(i) * e.n + j] = c.overflow[i];
    }
  }
  return out;
}

}  // namespace asym
