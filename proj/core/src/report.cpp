#include "asym/report.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace asym {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json jnum(Cx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json jdiag(const CMatrix& m) {
  ordered_json out = ordered_json::array();
  for (const Cx z : m.diag()) out.push_back(jnum(z));
  return out;
}

ordered_json jmatrix(const CMatrix& m) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(jnum(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

bool nearly_real(Cx z) {
  return std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z));
}

/// Coefficient rendered for a term position: "" for 1, "-" for -1,
/// "(p/q)" for other rationals, plain digits otherwise. `leading` keeps
/// the sign inside (first term of a sum); otherwise the magnitude only.
std::string coeff_body(Cx c, bool magnitude_only) {
  if (nearly_real(c)) {
    double x = c.real();
    if (magnitude_only) x = std::abs(x);
    const std::string s = pretty_number(x);
    if (s == "1") return "";
    if (s == "-1") return "-";
    if (s.find('/') != std::string::npos) return "(" + s + ")";
    return s;
  }
  std::string s = "(" + pretty_number(c.real());
  const double im = c.imag();
  s += im < 0 ? " - " : " + ";
  s += pretty_number(std::abs(im)) + "i)";
  return s;
}

std::string power_body(int power, const std::string& var) {
  if (power == 1) return var;
  return var + "^" + std::to_string(power);
}

}  // namespace

std::string pretty_number(double x) {
  if (x == 0.0) return "0";
  if (std::isfinite(x)) {
    const double tol = 1e-9 * std::max(1.0, std::abs(x));
    for (int q = 1; q <= 64; ++q) {
      const double scaled = x * q;
      if (std::abs(scaled) > 1e15) break;
      const long long p = std::llround(scaled);
      if (p == 0) continue;
      if (std::abs(x - static_cast<double>(p) / q) <= tol) {
        const long long g = std::gcd(std::llabs(p), static_cast<long long>(q));
        const long long num = p / g;
        const long long den = q / g;
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string factor_string(const ExpFactor& f) {
  std::vector<std::string> parts;

  if (f.scale() != Cx{1.0}) {
    if (nearly_real(f.scale())) {
      parts.push_back(pretty_number(f.scale().real()));
    } else {
      parts.push_back(coeff_body(f.scale(), false));
    }
  }

  if (f.rho() != 0.0) {
    const std::string rho = pretty_number(f.rho());
    const bool bare = rho.find('/') == std::string::npos &&
                      rho.find('-') == std::string::npos &&
                      rho.find('.') == std::string::npos;
    parts.push_back(bare ? "t^" + rho : "t^(" + rho + ")");
  }

  if (!f.p().zero()) {
    std::string body;
    bool first = true;
    for (const auto& [power, c] : f.p().terms()) {
      const bool negative = nearly_real(c) && c.real() < 0;
      if (first) {
        if (negative) body += "-";
      } else {
        body += negative ? " - " : " + ";
      }
      body += coeff_body(c, negative);
      body += power_body(power, "t");
      first = false;
    }
    parts.push_back("exp(" + body + ")");
  }

  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " * " + parts[i];
  return out;
}

std::string report_json(const Expansion& e,
                        const std::vector<AsymptoticColumn>& cols) {
  ordered_json doc;
  doc["n"] = e.n;
  doc["r"] = e.r;
  ordered_json lambdas = ordered_json::array();
  for (const Cx z : e.lambdas) lambdas.push_back(jnum(z));
  doc["lambdas"] = std::move(lambdas);
  doc["T"] = jmatrix(e.T);
  doc["T_inv"] = jmatrix(e.T_inv);

  ordered_json q = ordered_json::array();
  for (const CMatrix& m : e.Q) q.push_back(jdiag(m));
  doc["Q"] = std::move(q);

  ordered_json p = ordered_json::array();
  for (const CMatrix& m : e.Ptilde) p.push_back(jmatrix(m));
  doc["P"] = std::move(p);

  doc["R"] = jdiag(e.R);

  ordered_json columns = ordered_json::array();
  for (const AsymptoticColumn& col : cols) {
    ordered_json c;
    c["index"] = col.index;
    c["lambda"] = jnum(e.lambdas[static_cast<std::size_t>(col.index)]);
    c["rho"] = col.factor.rho();
    ordered_json terms = ordered_json::array();
    for (const auto& [power, coeff] : col.factor.p().terms()) {
      terms.push_back(ordered_json::array({power, jnum(coeff)}));
    }
    c["p"] = std::move(terms);
    ordered_json orders = ordered_json::array();
    for (const std::vector<Cx>& v : col.prefactor) {
      ordered_json column = ordered_json::array();
      for (const Cx z : v) column.push_back(jnum(z));
      orders.push_back(std::move(column));
    }
    c["prefactor"] = std::move(orders);
    c["factor"] = factor_string(col.factor);
    columns.push_back(std::move(c));
  }
  doc["columns"] = std::move(columns);

  return doc.dump(2) + "\n";
}

namespace {

std::string complex_line(Cx z) {
  if (nearly_real(z)) return pretty_number(z.real());
  std::string s = pretty_number(z.real());
  s += z.imag() < 0 ? " - " : " + ";
  s += pretty_number(std::abs(z.imag())) + "i";
  return s;
}

void append_diag(std::ostringstream& out, const char* label, const CMatrix& m) {
  out << label << ": ";
  const std::vector<Cx> d = m.diag();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out << ", ";
    out << complex_line(d[i]);
  }
  out << "\n";
}

void append_matrix(std::ostringstream& out, const CMatrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    out << "  [";
    for (int k = 0; k < m.cols(); ++k) {
      if (k) out << ", ";
      out << complex_line(m(i, k));
    }
    out << "]\n";
  }
}

}  // namespace

std::string report_text(const Expansion& e,
                        const std::vector<AsymptoticColumn>& cols) {
  std::ostringstream out;
  out << "asymptotic expansion: n = " << e.n << ", r = " << e.r << "\n\n";

  out << "eigenvalues:\n";
  for (std::size_t i = 0; i < e.lambdas.size(); ++i) {
    out << "  [" << i << "] " << complex_line(e.lambdas[i]) << "\n";
  }
  out << "\n";

  for (std::size_t k = 0; k < e.Q.size(); ++k) {
    append_diag(out, ("Q_" + std::to_string(k) + " diagonal").c_str(), e.Q[k]);
  }
  append_diag(out, "R diagonal", e.R);
  out << "\n";

  for (std::size_t k = 0; k < e.Ptilde.size(); ++k) {
    out << "P_" << (k + 1) << ":\n";
    append_matrix(out, e.Ptilde[k]);
  }
  if (!e.Ptilde.empty()) out << "\n";

  out << "basis T:\n";
  append_matrix(out, e.T);
  out << "\n";

  for (const AsymptoticColumn& col : cols) {
    out << "column " << col.index << " (lambda = "
        << complex_line(e.lambdas[static_cast<std::size_t>(col.index)]) << ")\n";
    out << "  factor: " << factor_string(col.factor) << "\n";
    for (std::size_t k = 0; k < col.prefactor.size(); ++k) {
      out << "  order t^" << (k == 0 ? "0" : "-" + std::to_string(k)) << ": (";
      for (std::size_t i = 0; i < col.prefactor[k].size(); ++i) {
        if (i) out << ", ";
        out << complex_line(col.prefactor[k][i]);
      }
      out << ")\n";
    }
  }
  return out.str();
}

}  // namespace asym
