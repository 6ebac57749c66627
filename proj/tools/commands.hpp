#pragma once

#include <string>

namespace asym::cli {

// Exit codes shared by every subcommand:
//   0 success, 2 parse/schema/usage, 3 math failure, 4 integrator abort.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitMath = 3;
inline constexpr int kExitAbort = 4;

struct ExpandOptions {
  std::string input;
  bool pad_zero = false;
  std::string output;  // empty = stdout
  std::string format = "json";  // json | text
};

struct SolveOptions {
  std::string input;
  bool pad_zero = false;
  std::string mode = "raw";  // raw | mollified
  double t0 = 0.0;
  double t1 = 0.0;
  std::string ic;  // comma-separated reals, in the integrated variable
  double shift_q = 0.0;
  std::string mollify_mode = "per-column";  // per-column | dominant
  std::string column = "dominant";  // dominant | 0-based index
  std::string base = "auto";  // auto | t | 1+t
  // CLI defaults mirror the general-purpose solver defaults the source
  // material leaned on (roughly eight accurate digits); the library's
  // IntegratorConfig keeps its own tighter atol for programmatic use.
  double rtol = 1e-8;
  double atol = 1e-8;
  int samples = 500;
  long long max_steps = 1'000'000;
  double h_init = 0.0;
  double h_max = 0.0;
  std::string output;  // empty = stdout
};

struct CompareOptions {
  SolveOptions solve;
  double delta = 0.6931471805599453;  // ln 2
};

int run_expand(const ExpandOptions& opt);
int run_solve(const SolveOptions& opt);
int run_compare(const CompareOptions& opt);

}  // namespace asym::cli
