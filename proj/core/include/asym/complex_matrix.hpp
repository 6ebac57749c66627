#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "asym/errors.hpp"

namespace asym {

using Cx = std::complex<double>;

inline bool is_finite(Cx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// "1+0i", "-2.5i", "1-0.5i" -- used in diagnostics and text reports.
std::string format_complex(Cx z);

/// Dense row-major complex matrix. The library only ever works with small
/// systems (spectral operations cap at n = 8), so all arithmetic is the
/// plain O(n^3) kind with no blocking or view tricks.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols);
  CMatrix(std::initializer_list<std::initializer_list<Cx>> rows);

  static CMatrix identity(int n);
  static CMatrix diagonal(const std::vector<Cx>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool square() const { return rows_ == cols_ && rows_ > 0; }

  Cx& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const Cx& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::vector<Cx> diag() const;
  std::vector<Cx> col(int j) const;

  /// Zero every entry in place (shape preserved, no reallocation).
  void set_zero();

  /// Off-diagonal entries are exactly zero (no tolerance).
  bool is_diagonal() const;
  bool is_zero() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Cx s);

  /// Operator infinity norm: maximum absolute row sum.
  double norm_inf() const;
  double max_abs() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cx> data_;

  void require_same_shape(const CMatrix& o) const;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Cx s, CMatrix a);
std::vector<Cx> operator*(const CMatrix& a, const std::vector<Cx>& v);

/// Diagonal part of a square matrix, everything else zeroed.
CMatrix diag_of(const CMatrix& a);

}  // namespace asym
