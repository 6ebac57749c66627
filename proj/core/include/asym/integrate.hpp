#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "asym/complex_matrix.hpp"

namespace asym {

/// Right-hand side of a linear system w' = M(t) w: fill `out` (pre-sized
/// n x n) with M(t).
using MatrixFn = std::function<void(double t, CMatrix& out)>;

struct IntegratorConfig {
  double rtol = 1e-8;
  double atol = 1e-10;
  double h_init = 0.0;        // 0 = choose automatically
  double h_max = 0.0;         // 0 = no cap beyond the window length
  long long max_steps = 1'000'000;  // accepted + rejected attempts
  int sample_count = 500;     // equispaced dense-output samples
};

enum class AbortReason { none, overflow, max_steps };

struct Trajectory {
  struct Sample {
    double t = 0.0;
    std::vector<Cx> w;
  };
  std::vector<Sample> samples;  // strictly increasing t, all values finite
  bool completed = false;
  AbortReason reason = AbortReason::none;
  double t_abort = 0.0;  // last trusted time when aborted

  const Sample& back() const { return samples.back(); }
};

/// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince coefficients) over
/// complex state, with PI step-size control and fourth-order dense output.
/// Aborts with reason overflow once any |w_i| exceeds 1e300 (or goes
/// non-finite), and with reason max_steps when the attempt budget runs out.
Trajectory integrate_adaptive(const MatrixFn& rhs, std::vector<Cx> w0,
                              double t0, double t1,
                              const IntegratorConfig& cfg = {});

/// First sampled time where |log ratio(t) - m| exceeds delta, with m the
/// median log ratio over the first quarter of the window; nullopt when the
/// whole series stays inside the band. Requires >= 16 samples. Ratios that
/// are zero or non-finite count as exceeding any threshold.
std::optional<double> detect_instability(
    const std::vector<std::pair<double, double>>& ratio,
    double delta = 0.6931471805599453);

}  // namespace asym
