#pragma once

#include <string>

#include "asym/companion.hpp"

namespace asym {

/// Parsed problem description: either a first-order system given by its
/// coefficient matrices or a scalar operator given by its a_j coefficients.
struct ProblemFile {
  enum class Kind { system, scalar };

  Kind kind = Kind::system;
  int n = 0;
  int r = 0;
  MatrixSeries series;  // kind == system
  ScalarOperator op;    // kind == scalar

  bool scalar() const { return kind == Kind::scalar; }
};

/// Parse and validate a problem file. JSON syntax failures raise ParseError
/// (with the reader's position report); structural violations raise
/// SchemaError naming the offending field.
ProblemFile parse_problem(const std::string& path);

/// Same, from an in-memory JSON document; `origin` labels error messages.
ProblemFile parse_problem_text(const std::string& text,
                               const std::string& origin);

/// The series to expand: the system itself, or the companion reduction of
/// the scalar operator.
MatrixSeries to_series(const ProblemFile& p);

}  // namespace asym
