#include "asym/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "asym/errors.hpp"
#include "json.hpp"

namespace asym {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& origin, const std::string& what) {
  throw SchemaError(origin + ": " + what);
}

int require_int(const json& j, const std::string& origin, const std::string& field) {
  if (!j.contains(field)) schema_fail(origin, "missing field \"" + field + "\"");
  const json& v = j.at(field);
  if (!v.is_number_integer()) {
    schema_fail(origin, "field \"" + field + "\" must be an integer");
  }
  return v.get<int>();
}

Cx parse_pair(const json& v, const std::string& origin, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    schema_fail(origin, where + " must be a [re, im] pair of numbers");
  }
  const Cx z(v[0].get<double>(), v[1].get<double>());
  if (!is_finite(z)) schema_fail(origin, where + " must be finite");
  return z;
}

CMatrix parse_matrix(const json& v, int n, const std::string& origin,
                     const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    schema_fail(origin, where + " must be an array of " + std::to_string(n) + " rows");
  }
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = v[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      schema_fail(origin, where + " row " + std::to_string(i) + " must have " +
                              std::to_string(n) + " entries");
    }
    for (int k = 0; k < n; ++k) {
      m(i, k) = parse_pair(row[k], origin,
                           where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

ProblemFile parse_system(const json& doc, int n, int r, const std::string& origin) {
  if (!doc.contains("series")) schema_fail(origin, "missing field \"series\"");
  const json& series = doc.at("series");
  if (!series.is_array() || series.empty()) {
    schema_fail(origin, "\"series\" must be a non-empty array");
  }

  int max_j = 0;
  std::set<int> seen;
  for (const json& entry : series) {
    if (!entry.is_object()) schema_fail(origin, "\"series\" entries must be objects");
    const int j = require_int(entry, origin, "j");
    if (j < 0) schema_fail(origin, "series index j must be >= 0");
    if (!seen.insert(j).second) {
      schema_fail(origin, "duplicate series index j = " + std::to_string(j));
    }
    if (j > max_j) max_j = j;
  }

  ProblemFile p;
  p.kind = ProblemFile::Kind::system;
  p.n = n;
  p.r = r;
  p.series.n = n;
  p.series.r = r;
  p.series.A.assign(static_cast<std::size_t>(max_j) + 1, CMatrix(n, n));
  for (const json& entry : series) {
    const int j = entry.at("j").get<int>();
    if (!entry.contains("matrix")) {
      schema_fail(origin, "series entry j = " + std::to_string(j) +
                              " missing field \"matrix\"");
    }
    p.series.A[static_cast<std::size_t>(j)] =
        parse_matrix(entry.at("matrix"), n, origin,
                     "series[j=" + std::to_string(j) + "].matrix");
  }
  if (p.series.A[0].is_zero()) {
    schema_fail(origin, "leading matrix (j = 0) must be non-zero");
  }
  p.series.validate();
  return p;
}

ProblemFile parse_scalar(const json& doc, int n, int r, const std::string& origin) {
  if (!doc.contains("coefficients")) schema_fail(origin, "missing field \"coefficients\"");
  const json& coeffs = doc.at("coefficients");
  if (!coeffs.is_array()) schema_fail(origin, "\"coefficients\" must be an array");

  ProblemFile p;
  p.kind = ProblemFile::Kind::scalar;
  p.n = n;
  p.r = r;
  p.op.n = n;
  p.op.r = r;
  p.op.a.assign(static_cast<std::size_t>(n), LaurentPoly{});

  std::set<int> seen;
  for (const json& entry : coeffs) {
    if (!entry.is_object()) schema_fail(origin, "\"coefficients\" entries must be objects");
    const int j = require_int(entry, origin, "j");
    if (j < 1 || j > n) {
      schema_fail(origin, "coefficient index j must lie in [1, " + std::to_string(n) + "]");
    }
    if (!seen.insert(j).second) {
      schema_fail(origin, "duplicate coefficient index j = " + std::to_string(j));
    }
    if (!entry.contains("terms")) {
      schema_fail(origin, "coefficient j = " + std::to_string(j) +
                              " missing field \"terms\"");
    }
    const json& terms = entry.at("terms");
    if (!terms.is_array()) {
      schema_fail(origin, "coefficient j = " + std::to_string(j) +
                              ": \"terms\" must be an array");
    }
    LaurentPoly poly;
    std::set<int> powers;
    for (const json& term : terms) {
      if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer()) {
        schema_fail(origin, "coefficient j = " + std::to_string(j) +
                                ": each term must be [power, [re, im]]");
      }
      const int power = term[0].get<int>();
      if (power > 0) {
        schema_fail(origin, "coefficient j = " + std::to_string(j) +
                                ": powers must be <= 0 (got " + std::to_string(power) + ")");
      }
      if (!powers.insert(power).second) {
        schema_fail(origin, "coefficient j = " + std::to_string(j) +
                                ": duplicate power " + std::to_string(power));
      }
      poly.set(power, parse_pair(term[1], origin,
                                 "coefficient j = " + std::to_string(j) + ", power " +
                                     std::to_string(power)));
    }
    p.op.a[static_cast<std::size_t>(j - 1)] = std::move(poly);
  }
  p.op.validate();
  return p;
}

ProblemFile parse_document(const json& doc, const std::string& origin) {
  if (!doc.is_object()) schema_fail(origin, "top level must be an object");
  if (!doc.contains("kind")) schema_fail(origin, "missing field \"kind\"");
  const json& kind = doc.at("kind");
  if (!kind.is_string()) schema_fail(origin, "field \"kind\" must be a string");
  const std::string kind_s = kind.get<std::string>();
  if (kind_s != "system" && kind_s != "scalar") {
    schema_fail(origin, "field \"kind\" must be \"system\" or \"scalar\" (got \"" +
                            kind_s + "\")");
  }

  const int n = require_int(doc, origin, "n");
  if (n < 1) schema_fail(origin, "field \"n\" must be >= 1");
  const int r = require_int(doc, origin, "r");
  if (r < 0) schema_fail(origin, "field \"r\" must be >= 0");

  return kind_s == "system" ? parse_system(doc, n, r, origin)
                            : parse_scalar(doc, n, r, origin);
}

}  // namespace

ProblemFile parse_problem_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  return parse_document(doc, origin);
}

ProblemFile parse_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), path);
}

MatrixSeries to_series(const ProblemFile& p) {
  if (p.scalar()) return scalar_to_system(p.op);
  return p.series;
}

}  // namespace asym
