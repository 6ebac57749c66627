#include <cstdio>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_solve_flags(CLI::App* cmd, asym::cli::SolveOptions& o) {
  cmd->add_option("input", o.input, "Problem file (JSON)")->required();
  cmd->add_flag("--pad-zero", o.pad_zero,
                "Zero-fill missing series coefficients up to order r+1");
  cmd->add_option("--mode", o.mode, "Integration mode")
      ->check(CLI::IsMember({"raw", "mollified"}))
      ->capture_default_str();
  cmd->add_option("--t0", o.t0, "Start of the integration window")->required();
  cmd->add_option("--t1", o.t1, "End of the integration window")->required();
  cmd->add_option("--ic", o.ic,
                  "Comma-separated initial values in the integrated variable "
                  "(raw: state w / scalar derivatives; mollified: u)")
      ->required();
  cmd->add_option("--shift-q", o.shift_q,
                  "Shift t = tau + q (mollified mode only)")
      ->capture_default_str();
  cmd->add_option("--mollify-mode", o.mollify_mode,
                  "Mollifier construction for system problems")
      ->check(CLI::IsMember({"per-column", "dominant"}))
      ->capture_default_str();
  cmd->add_option("--column", o.column,
                  "Asymptotic column: \"dominant\" or a 0-based index")
      ->capture_default_str();
  cmd->add_option("--base", o.base, "Mollifier power base")
      ->check(CLI::IsMember({"auto", "t", "1+t"}))
      ->capture_default_str();
  cmd->add_option("--rtol", o.rtol, "Relative tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--atol", o.atol, "Absolute tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--samples", o.samples, "Dense-output sample count")
      ->check(CLI::Range(2, 10'000'000))
      ->capture_default_str();
  cmd->add_option("--max-steps", o.max_steps, "Step-attempt budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--h-init", o.h_init, "Initial step size (0 = automatic)")
      ->capture_default_str();
  cmd->add_option("--h-max", o.h_max, "Step-size cap (0 = window length)")
      ->capture_default_str();
  cmd->add_option("-o,--output", o.output, "Output CSV path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Elementary asymptotic solution factors for linear ODE systems with an "
      "irregular singularity, and mollified (stabilized) numerical "
      "integration built on them"};
  app.require_subcommand(1);

  asym::cli::ExpandOptions expand_opt;
  asym::cli::SolveOptions solve_opt;
  asym::cli::CompareOptions compare_opt;

  CLI::App* expand = app.add_subcommand(
      "expand", "Compute the asymptotic expansion and write a report");
  expand->add_option("input", expand_opt.input, "Problem file (JSON)")
      ->required();
  expand->add_flag("--pad-zero", expand_opt.pad_zero,
                   "Zero-fill missing series coefficients up to order r+1");
  expand->add_option("-o,--output", expand_opt.output,
                     "Output path (default: stdout)");
  expand->add_option("--format", expand_opt.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  CLI::App* solve = app.add_subcommand(
      "solve", "Integrate the system (raw or mollified) and write CSV samples");
  add_solve_flags(solve, solve_opt);

  CLI::App* compare = app.add_subcommand(
      "compare",
      "Integrate, ratio against an asymptotic column, and print a verdict");
  add_solve_flags(compare, compare_opt.solve);
  compare->add_option("--delta", compare_opt.delta,
                      "Log-ratio band half-width for the verdict")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    std::fprintf(stderr, "status=ok command=help exit=0\n");
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    std::fprintf(stderr, "status=ok command=help exit=0\n");
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    std::fprintf(stderr, "status=error command=cli exit=2 error=UsageError msg=%s\n",
                 msg.c_str());
    return asym::cli::kExitInput;
  }

  if (expand->parsed()) return asym::cli::run_expand(expand_opt);
  if (solve->parsed()) return asym::cli::run_solve(solve_opt);
  return asym::cli::run_compare(compare_opt);
}
