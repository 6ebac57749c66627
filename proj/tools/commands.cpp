#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "asym/companion.hpp"
#include "asym/errors.hpp"
#include "asym/expansion.hpp"
#include "asym/integrate.hpp"
#include "asym/mollify.hpp"
#include "asym/problem.hpp"
#include "asym/report.hpp"

namespace asym::cli {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

void status_ok(const char* cmd) {
  std::fprintf(stderr, "status=ok command=%s exit=0\n", cmd);
}

void status_error(const char* cmd, int code, const char* name,
                  const std::string& what) {
  std::fprintf(stderr, "status=error command=%s exit=%d error=%s msg=%s\n", cmd,
               code, name, one_line(what).c_str());
}

void status_abort(const char* cmd, AbortReason reason, double t_abort) {
  std::fprintf(stderr, "status=abort command=%s exit=%d reason=%s t_abort=%s\n",
               cmd, kExitAbort,
               reason == AbortReason::overflow ? "overflow" : "max_steps",
               g17(t_abort).c_str());
}

const char* error_name(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const SingularMatrixError*>(&e)) return "SingularMatrixError";
  if (dynamic_cast<const NoConvergenceError*>(&e)) return "NoConvergenceError";
  if (dynamic_cast<const DegenerateSpectrumError*>(&e))
    return "DegenerateSpectrumError";
  if (dynamic_cast<const MalformedOperatorError*>(&e))
    return "MalformedOperatorError";
  if (dynamic_cast<const TruncatedSeriesError*>(&e))
    return "TruncatedSeriesError";
  if (dynamic_cast<const TieError*>(&e)) return "TieError";
  if (dynamic_cast<const InsufficientDataError*>(&e))
    return "InsufficientDataError";
  return "Error";
}

template <class Fn>
int guard(const char* cmd, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    status_error(cmd, kExitInput, "ParseError", e.what());
    return kExitInput;
  } catch (const SchemaError& e) {
    status_error(cmd, kExitInput, "SchemaError", e.what());
    return kExitInput;
  } catch (const Error& e) {
    status_error(cmd, kExitMath, error_name(e), e.what());
    return kExitMath;
  } catch (const std::exception& e) {
    status_error(cmd, kExitMath, "InternalError", e.what());
    return kExitMath;
  }
}

/// Write to stdout when path is empty, otherwise atomically (temp + rename).
void write_text(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp(path + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to output file: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot move output into place: " + path);
  }
}

std::vector<double> parse_ic(const std::string& s) {
  if (s.empty()) throw SchemaError("--ic must list the initial values");
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string piece =
        s.substr(pos, comma == std::string::npos ? std::string::npos
                                                 : comma - pos);
    char* end = nullptr;
    const double v = std::strtod(piece.c_str(), &end);
    if (piece.empty() || end == piece.c_str() || *end != '\0' ||
        !std::isfinite(v)) {
      throw SchemaError("--ic entry is not a finite number: \"" + piece + "\"");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::size_t resolve_column(const std::string& arg,
                           const std::vector<AsymptoticColumn>& cols) {
  if (arg == "dominant") return dominant_column(cols);
  char* end = nullptr;
  const long idx = std::strtol(arg.c_str(), &end, 10);
  if (arg.empty() || end == arg.c_str() || *end != '\0' || idx < 0 ||
      idx >= static_cast<long>(cols.size())) {
    throw SchemaError("--column must be \"dominant\" or an index in [0, " +
                      std::to_string(cols.size()) + ")");
  }
  return static_cast<std::size_t>(idx);
}

PowerBase resolve_base(const std::string& base, double t0, double q) {
  if (base == "t") return PowerBase::t;
  if (base == "1+t") return PowerBase::one_plus_t;
  if (base == "auto") {
    return t0 + q > 0.0 ? PowerBase::t : PowerBase::one_plus_t;
  }
  throw SchemaError("--base must be auto, t, or 1+t");
}

double binom(int k, int j) {
  double b = 1.0;
  for (int i = 1; i <= j; ++i) b = b * (k - j + i) / i;
  return b;
}

/// Everything a solve/compare run needs, built before integration so the rhs
/// closures can reference stable members.
struct Run {
  ProblemFile problem;
  MatrixSeries series;
  bool mollified = false;
  double shift = 0.0;
  int n = 0;
  std::vector<Cx> w0;

  std::optional<MollifiedSystem> msys;
  std::optional<MollifiedScalar> mscal;
  std::vector<LaurentPoly> h;  // phi^(k)/phi for scalar reconstruction

  std::optional<Expansion> exp;
  std::vector<AsymptoticColumn> cols;
  std::size_t column = 0;

  Trajectory traj;
};

std::unique_ptr<Run> prepare(const SolveOptions& o, bool need_expansion) {
  if (o.mode != "raw" && o.mode != "mollified") {
    throw SchemaError("--mode must be raw or mollified");
  }
  if (!(o.t1 > o.t0)) throw SchemaError("--t1 must exceed --t0");
  if (o.shift_q < 0) throw SchemaError("--shift-q must be >= 0");
  if (o.shift_q != 0 && o.mode == "raw") {
    throw SchemaError("--shift-q applies to --mode mollified only");
  }

  auto run = std::make_unique<Run>();
  run->problem = parse_problem(o.input);
  run->series = to_series(run->problem);
  run->n = run->series.n;
  run->mollified = o.mode == "mollified";

  const std::vector<double> ic = parse_ic(o.ic);
  if (static_cast<int>(ic.size()) != run->n) {
    throw SchemaError("--ic needs exactly " + std::to_string(run->n) +
                      " values, got " + std::to_string(ic.size()));
  }

  if (run->mollified || need_expansion) {
    run->exp = compute_expansion(run->series, o.pad_zero);
    run->cols = assemble_columns(*run->exp);
    run->column = resolve_column(o.column, run->cols);
  }

  run->w0.resize(static_cast<std::size_t>(run->n));
  if (!run->mollified) {
    const int r = run->series.r;
    if (r > 0 && o.t0 <= 0) {
      throw DomainError("raw integration requires t0 > 0 when r > 0");
    }
    if (run->problem.scalar()) {
      // Initial values are (y, y', ..., y^(n-1)); the companion state scales
      // the k-th derivative by t^(-r k).
      for (int k = 0; k < run->n; ++k) {
        run->w0[static_cast<std::size_t>(k)] =
            ic[static_cast<std::size_t>(k)] * std::pow(o.t0, -r * k);
      }
    } else {
      for (int k = 0; k < run->n; ++k) {
        run->w0[static_cast<std::size_t>(k)] = ic[static_cast<std::size_t>(k)];
      }
    }
  } else {
    run->shift = o.shift_q;
    const PowerBase base = resolve_base(o.base, o.t0, o.shift_q);
    if (run->problem.scalar()) {
      if (base != PowerBase::t) {
        throw SchemaError(
            "scalar mollification supports --base t only (the exact "
            "conjugation needs a plain power of t)");
      }
      if (o.t0 + o.shift_q <= 0) {
        throw DomainError("scalar mollification requires t0 + shift > 0");
      }
      const std::string mm = o.mollify_mode;
      if (mm != "per-column" && mm != "dominant") {
        throw SchemaError("--mollify-mode must be per-column or dominant");
      }
      const ExpFactor& phi = run->cols[run->column].factor;
      run->mscal =
          shift_variable(mollify_scalar_operator(run->problem.op, phi),
                         o.shift_q);
      run->h = log_derivative_ratios(phi.log_derivative(), run->n);
    } else {
      MollifierMode mode;
      if (o.mollify_mode == "per-column") {
        mode = MollifierMode::per_column;
      } else if (o.mollify_mode == "dominant") {
        mode = MollifierMode::dominant;
      } else {
        throw SchemaError("--mollify-mode must be per-column or dominant");
      }
      const Mollifier m = build_mollifier(*run->exp, run->cols, mode, base);
      run->msys = shift_variable(mollify_system(run->series, m), o.shift_q);
    }
    for (int k = 0; k < run->n; ++k) {
      run->w0[static_cast<std::size_t>(k)] = ic[static_cast<std::size_t>(k)];
    }
  }
  return run;
}

void integrate_run(Run& run, const SolveOptions& o) {
  IntegratorConfig cfg;
  cfg.rtol = o.rtol;
  cfg.atol = o.atol;
  cfg.h_init = o.h_init;
  cfg.h_max = o.h_max;
  cfg.max_steps = o.max_steps;
  cfg.sample_count = o.samples;

  MatrixFn rhs;
  if (!run.mollified) {
    rhs = [&series = run.series](double t, CMatrix& out) {
      series.eval_scaled(t, out);
    };
  } else if (run.msys) {
    rhs = [&sys = *run.msys](double tau, CMatrix& out) { sys.rhs(tau, out); };
  } else {
    rhs = [&sc = *run.mscal](double tau, CMatrix& out) { sc.rhs(tau, out); };
  }
  run.traj = integrate_adaptive(rhs, run.w0, o.t0, o.t1, cfg);
}

/// Reconstructed original-variable row for a mollified sample. For systems
/// this is w_i = m_i(tau) u_i; for scalar operators the y-derivatives
/// y^(k) = phi * sum_j C(k,j) h_{k-j} u^(j). Overflowing factors produce
/// +/-Inf entries (the exact factor is known; only its magnitude escapes
/// double range), except against exact zeros, which stay zero.
std::vector<Cx> reconstruct(const Run& run, const Trajectory::Sample& s) {
  const std::size_t n = static_cast<std::size_t>(run.n);
  std::vector<Cx> w(n);
  if (run.msys) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s.w[i] == Cx{}) continue;
      w[i] = run.msys->factor_value(static_cast<int>(i), s.t).value * s.w[i];
    }
  } else {
    const double t = s.t + run.mscal->shift;
    const Cx phi = run.mscal->phi_value(s.t).value;
    for (std::size_t k = 0; k < n; ++k) {
      Cx acc{};
      for (std::size_t j = 0; j <= k; ++j) {
        acc += binom(static_cast<int>(k), static_cast<int>(j)) *
               run.h[k - j].eval(t) * s.w[j];
      }
      if (acc != Cx{}) w[k] = phi * acc;
    }
  }
  return w;
}

std::string solve_csv(const Run& run) {
  std::string out = "t";
  for (int i = 1; i <= run.n; ++i) {
    out += ",re_w" + std::to_string(i) + ",im_w" + std::to_string(i);
  }
  if (run.mollified) {
    for (int i = 1; i <= run.n; ++i) {
      out += ",re_u" + std::to_string(i) + ",im_u" + std::to_string(i);
    }
  }
  out += "\n";
  for (const Trajectory::Sample& s : run.traj.samples) {
    out += g17(s.t);
    const std::vector<Cx>& wrow = run.mollified ? reconstruct(run, s) : s.w;
    for (const Cx z : wrow) {
      out += "," + g17(z.real()) + "," + g17(z.imag());
    }
    if (run.mollified) {
      for (const Cx z : s.w) {
        out += "," + g17(z.real()) + "," + g17(z.imag());
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace

int run_expand(const ExpandOptions& opt) {
  return guard("expand", [&] {
    if (opt.format != "json" && opt.format != "text") {
      throw SchemaError("--format must be json or text");
    }
    const ProblemFile p = parse_problem(opt.input);
    const MatrixSeries series = to_series(p);
    const Expansion e = compute_expansion(series, opt.pad_zero);
    const std::vector<AsymptoticColumn> cols = assemble_columns(e);
    write_text(opt.output,
               opt.format == "json" ? report_json(e, cols) : report_text(e, cols));
    status_ok("expand");
    return kExitOk;
  });
}

int run_solve(const SolveOptions& opt) {
  return guard("solve", [&] {
    std::unique_ptr<Run> run = prepare(opt, false);
    integrate_run(*run, opt);
    write_text(opt.output, solve_csv(*run));
    if (!run->traj.completed) {
      status_abort("solve", run->traj.reason, run->traj.t_abort);
      return kExitAbort;
    }
    status_ok("solve");
    return kExitOk;
  });
}

int run_compare(const CompareOptions& opt) {
  return guard("compare", [&] {
    std::unique_ptr<Run> run = prepare(opt.solve, true);
    integrate_run(*run, opt.solve);

    // Prediction lives in the same variables as the emitted solution row:
    // plain state for systems, y-derivatives (row-scaled) for scalar kinds.
    std::vector<ExpFactor> scale = row_scaling(run->n, run->series.r);
    const bool scalar_mollified = run->problem.scalar() && run->mollified;
    const std::vector<ExpFactor>* scale_rows =
        scalar_mollified ? &scale : nullptr;

    const std::size_t n = static_cast<std::size_t>(run->n);
    std::string csv = "t";
    for (std::size_t i = 1; i <= n; ++i) csv += ",ratio_" + std::to_string(i);
    csv += "\n";

    std::vector<std::vector<std::pair<double, double>>> series_by_comp(n);
    for (const Trajectory::Sample& s : run->traj.samples) {
      const double t_eval = run->mollified ? s.t + run->shift : s.t;
      const EvaluatedColumn pred = evaluate_column(
          *run->exp, run->cols[run->column], t_eval, scale_rows);
      const std::vector<Cx> wrow =
          run->mollified ? reconstruct(*run, s) : s.w;
      csv += g17(s.t);
      for (std::size_t i = 0; i < n; ++i) {
        const double denom = pred.value[i].real();
        double ratio = 0.0;
        if (!pred.overflow[i] && std::isfinite(denom) &&
            std::abs(denom) > 1e-300) {
          ratio = std::abs(wrow[i].real() / denom);
          series_by_comp[i].emplace_back(s.t, ratio);
        }
        csv += "," + g17(ratio);
      }
      csv += "\n";
    }
    write_text(opt.solve.output, csv);

    if (!run->traj.completed) {
      status_abort("compare", run->traj.reason, run->traj.t_abort);
      return kExitAbort;
    }

    std::optional<double> onset;
    bool any_series = false;
    for (const auto& series : series_by_comp) {
      if (series.size() < 16) continue;
      any_series = true;
      const std::optional<double> hit = detect_instability(series, opt.delta);
      if (hit && (!onset || *hit < *onset)) onset = hit;
    }
    if (!any_series) {
      throw InsufficientDataError(
          "no component has enough valid ratio samples for a verdict");
    }
    if (onset) {
      std::printf("UNSTABLE t_onset=%s\n", g17(*onset).c_str());
    } else {
      std::printf("STABLE\n");
    }
    std::fflush(stdout);
    status_ok("compare");
    return kExitOk;
  });
}

}  // namespace asym::cli
