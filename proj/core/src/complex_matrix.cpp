#include "asym/complex_matrix.hpp"

#include <cstdio>

namespace asym {

std::string format_complex(Cx z) {
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%g", z.real());
    return buf;
  }
  if (z.real() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%gi", z.imag());
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%g%+gi", z.real(), z.imag());
  return buf;
}

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0 || (rows == 0) != (cols == 0)) {
    throw DimensionError("matrix shape must be positive in both dimensions");
  }
  data_.assign(static_cast<std::size_t>(rows) * cols, Cx{});
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Cx>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) {
      throw DimensionError("ragged initializer for matrix");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(const std::vector<Cx>& entries) {
  const int n = static_cast<int>(entries.size());
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = entries[i];
  return m;
}

std::vector<Cx> CMatrix::diag() const {
  if (!square()) throw DimensionError("diag requires a square matrix");
  std::vector<Cx> d(rows_);
  for (int i = 0; i < rows_; ++i) d[i] = (*this)(i, i);
  return d;
}

std::vector<Cx> CMatrix::col(int j) const {
  if (j < 0 || j >= cols_) throw DimensionError("column index out of range");
  std::vector<Cx> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void CMatrix::set_zero() {
  for (Cx& z : data_) z = Cx{};
}

bool CMatrix::is_diagonal() const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (i != j && (*this)(i, j) != Cx{}) return false;
    }
  }
  return true;
}

bool CMatrix::is_zero() const {
  for (const Cx& z : data_) {
    if (z != Cx{}) return false;
  }
  return true;
}

bool CMatrix::all_finite() const {
  for (const Cx& z : data_) {
    if (!is_finite(z)) return false;
  }
  return true;
}

void CMatrix::require_same_shape(const CMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DimensionError("matrix shapes do not match");
  }
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Cx s) {
  for (Cx& z : data_) z *= s;
  return *this;
}

double CMatrix::norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double row = 0.0;
    for (int j = 0; j < cols_; ++j) row += std::abs((*this)(i, j));
    if (row > best) best = row;
  }
  return best;
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const Cx& z : data_) best = std::max(best, std::abs(z));
  return best;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  CMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Cx aik = a(i, k);
      if (aik == Cx{}) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

CMatrix operator*(Cx s, CMatrix a) { return a *= s; }

std::vector<Cx> operator*(const CMatrix& a, const std::vector<Cx>& v) {
  if (a.cols() != static_cast<int>(v.size())) {
    throw DimensionError("matrix-vector product shape mismatch");
  }
  std::vector<Cx> out(a.rows(), Cx{});
  for (int i = 0; i < a.rows(); ++i) {
    Cx acc{};
    for (int j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

CMatrix diag_of(const CMatrix& a) {
  if (!a.square()) throw DimensionError("diag_of requires a square matrix");
  CMatrix d(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) d(i, i) = a(i, i);
  return d;
}

}  // namespace asym
