#include "asym/companion.hpp"

#include <cmath>

namespace asym {

void ScalarOperator::validate() const {
  if (n < 1) throw MalformedOperatorError("operator order must be at least 1");
  if (r < 0) throw MalformedOperatorError("singularity rank must be >= 0");
  if (static_cast<int>(a.size()) != n) {
    throw MalformedOperatorError("operator needs exactly n coefficients a_1..a_n");
  }
  for (int j = 0; j < n; ++j) {
    if (!a[j].zero() && a[j].max_power() > 0) {
      throw MalformedOperatorError(
          "coefficient a_" + std::to_string(j + 1) +
          " contains positive powers of t");
    }
  }
}

void MatrixSeries::validate() const {
  if (n < 1) throw DimensionError("system dimension must be at least 1");
  if (r < 0) throw DomainError("singularity rank must be >= 0");
  if (A.empty()) throw TruncatedSeriesError("series has no coefficients");
  for (const CMatrix& m : A) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionError("series coefficient is not n x n");
    }
  }
}

void MatrixSeries::eval_scaled(double t, CMatrix& out) const {
  if (!(t > 0.0)) {
    // t = 0 is only safe when no effective negative power survives; keep the
    // rule simple and demand positivity except for plain polynomial content.
    for (std::size_t j = r + 1; j < A.size(); ++j) {
      if (!A[j].is_zero()) {
        throw DomainError("series evaluation requires t > 0");
      }
    }
    if (t != 0.0) throw DomainError("series evaluation requires t >= 0");
  }
  if (out.rows() != n || out.cols() != n) {
    out = CMatrix(n, n);
  } else {
    out.set_zero();
  }
  for (std::size_t j = 0; j < A.size(); ++j) {
    const CMatrix& aj = A[j];
    if (aj.is_zero()) continue;
    const int power = r - static_cast<int>(j);
    const double f = power == 0 ? 1.0 : std::pow(t, static_cast<double>(power));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        const Cx c = aj(i, k);
        if (c != Cx{}) out(i, k) += f * c;
      }
    }
  }
}

MatrixSeries scalar_to_system(const ScalarOperator& op) {
  op.validate();
  const int n = op.n;
  const int r = op.r;

  int deepest = r + 1;
  for (const LaurentPoly& aj : op.a) {
    if (!aj.zero()) deepest = std::max(deepest, -aj.min_power());
  }

  MatrixSeries sys;
  sys.n = n;
  sys.r = r;
  sys.A.assign(deepest + 1, CMatrix(n, n));

  // Chain part: w_k' picks up t^r w_{k+1} plus the scaling drift
  // -r(k-1) t^{-1-r} w_k from differentiating t^{-r(k-1)}.
  for (int k = 0; k + 1 < n; ++k) sys.A[0](k, k + 1) = 1.0;
  for (int k = 0; k < n; ++k) {
    const double drift = -static_cast<double>(r) * k;
    if (drift != 0.0) sys.A[r + 1](k, k) = drift;
  }

  // Last row: y^(n) = -sum_j t^{rj} a_j y^(n-j) lands as -a_j on w_{n-j+1}.
  for (int j = 1; j <= n; ++j) {
    const LaurentPoly& aj = op.a[j - 1];
    const int column = n - j;  // zero-based column of w_{n-j+1}
    for (const auto& [power, c] : aj.terms()) {
      sys.A[-power](n - 1, column) -= c;
    }
  }

  return sys;
}

std::vector<ExpFactor> row_scaling(int n, int r) {
  if (n < 1 || r < 0) throw DomainError("row scaling needs n >= 1, r >= 0");
  std::vector<ExpFactor> s;
  s.reserve(n);
  for (int k = 0; k < n; ++k) {
    s.emplace_back(static_cast<double>(r) * k, LaurentPoly{});
  }
  return s;
}

Trajectory reconstruct_scalar(const Trajectory& w_traj, int r) {
  if (r < 0) throw DomainError("singularity rank must be >= 0");
  Trajectory out = w_traj;
  for (auto& sample : out.samples) {
    if (!(sample.t > 0.0)) {
      throw DomainError("scalar reconstruction requires sample times > 0");
    }
    for (std::size_t k = 0; k < sample.w.size(); ++k) {
      const double power = static_cast<double>(r) * static_cast<double>(k);
      if (power != 0.0) sample.w[k] *= std::pow(sample.t, power);
    }
  }
  return out;
}

}  // namespace asym
