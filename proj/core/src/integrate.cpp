#include "asym/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace asym {
namespace {

// Dormand-Prince 5(4) tableau, error weights (b - bhat) and the coefficients
// of the fourth-order dense interpolant.
constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};

constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kA71 = 35.0 / 384.0, kA73 = 500.0 / 1113.0,
                 kA74 = 125.0 / 192.0, kA75 = -2187.0 / 6784.0,
                 kA76 = 11.0 / 84.0;

constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

constexpr double kD1 = -12715105075.0 / 11282082432.0,
                 kD3 = 87487479700.0 / 32700410799.0,
                 kD4 = -10690763975.0 / 1880347072.0,
                 kD5 = 701980252875.0 / 199316789632.0,
                 kD6 = -1453857185.0 / 822651844.0,
                 kD7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kAlpha = 0.7 / 5.0;  // proportional exponent
constexpr double kBeta = 0.4 / 5.0;   // integral (memory) exponent
constexpr double kShrink = 0.2;
constexpr double kGrow = 5.0;
constexpr double kOverflowBound = 1e300;

using Vec = std::vector<Cx>;

bool vec_finite_bounded(const Vec& v) {
  for (const Cx& z : v) {
    if (!is_finite(z)) return false;
    if (std::abs(z.real()) > kOverflowBound || std::abs(z.imag()) > kOverflowBound) {
      return false;
    }
  }
  return true;
}

void mat_apply(const CMatrix& m, const Vec& v, Vec& out) {
  const int n = m.rows();
  for (int i = 0; i < n; ++i) {
    Cx acc{};
    for (int j = 0; j < n; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
}

}  // namespace

Trajectory integrate_adaptive(const MatrixFn& rhs, std::vector<Cx> w0,
                              double t0, double t1,
                              const IntegratorConfig& cfg) {
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) {
    throw DomainError("integrator tolerances must be positive");
  }
  if (cfg.max_steps < 1) throw DomainError("max_steps must be at least 1");
  if (cfg.sample_count < 2) throw DomainError("sample_count must be at least 2");
  if (!(t1 > t0)) throw DomainError("integration window must satisfy t1 > t0");
  if (w0.empty()) throw DimensionError("empty initial state");
  if (!vec_finite_bounded(w0)) throw DomainError("non-finite initial state");

  const int n = static_cast<int>(w0.size());
  const double span = t1 - t0;
  const double h_cap = cfg.h_max > 0.0 ? std::min(cfg.h_max, span) : span;

  Trajectory traj;
  const int ns = cfg.sample_count;
  auto sample_time = [&](int i) {
    return i + 1 == ns ? t1 : t0 + span * (static_cast<double>(i) / (ns - 1));
  };

  CMatrix m(n, n);
  Vec y = std::move(w0);
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), stage(n), ynew(n);
  Vec rc1(n), rc2(n), rc3(n), rc4(n), rc5(n);

  double t = t0;
  traj.samples.push_back({t0, y});
  int next_sample = 1;

  auto finish_abort = [&](AbortReason why) {
    traj.completed = false;
    traj.reason = why;
    traj.t_abort = t;
    if (traj.samples.empty() || traj.samples.back().t < t) {
      traj.samples.push_back({t, y});
    }
  };

  rhs(t, m);
  if (!m.all_finite()) {
    finish_abort(AbortReason::overflow);
    return traj;
  }
  mat_apply(m, y, k1);

  double h = cfg.h_init > 0.0 ? cfg.h_init : span / 100.0;
  // Start near the local rate so a stiff left endpoint does not waste the
  // whole rejection cascade.
  const double rate = m.norm_inf();
  if (cfg.h_init <= 0.0 && rate > 0.0) h = std::min(h, 1.0 / rate);
  h = std::min(h, h_cap);

  double err_old = 1e-4;
  bool last_rejected = false;
  long long attempts = 0;

  while (t < t1) {
    if (attempts++ >= cfg.max_steps) {
      finish_abort(AbortReason::max_steps);
      return traj;
    }
    if (t + h == t) {  // step size underflowed the time variable
      finish_abort(AbortReason::max_steps);
      return traj;
    }
    const bool last_step = t + h >= t1;
    if (last_step) h = t1 - t;

    for (int i = 0; i < n; ++i) stage[i] = y[i] + h * (kA21 * k1[i]);
    rhs(t + kC[1] * h, m);
    mat_apply(m, stage, k2);

    for (int i = 0; i < n; ++i) {
      stage[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
    }
    rhs(t + kC[2] * h, m);
    mat_apply(m, stage, k3);

    for (int i = 0; i < n; ++i) {
      stage[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
    }
    rhs(t + kC[3] * h, m);
    mat_apply(m, stage, k4);

    for (int i = 0; i < n; ++i) {
      stage[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] +
                             kA54 * k4[i]);
    }
    rhs(t + kC[4] * h, m);
    mat_apply(m, stage, k5);

    for (int i = 0; i < n; ++i) {
      stage[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                             kA64 * k4[i] + kA65 * k5[i]);
    }
    rhs(t + h, m);
    mat_apply(m, stage, k6);

    for (int i = 0; i < n; ++i) {
      ynew[i] = y[i] + h * (kA71 * k1[i] + kA73 * k3[i] + kA74 * k4[i] +
                            kA75 * k5[i] + kA76 * k6[i]);
    }
    mat_apply(m, ynew, k7);  // c6 = c7 = 1, so m already holds M(t + h)

    double err_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const Cx e = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] +
                        kE5 * k5[i] + kE6 * k6[i] + kE7 * k7[i]);
      const double scale =
          cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double r = std::abs(e) / scale;
      err_sq += r * r;
    }
    double err = std::sqrt(err_sq / n);
    if (!std::isfinite(err)) err = 1e10;

    if (err > 1.0) {
      h *= std::clamp(kSafety * std::pow(err, -kAlpha), kShrink, 1.0);
      last_rejected = true;
      continue;
    }

    if (!vec_finite_bounded(ynew)) {
      finish_abort(AbortReason::overflow);
      return traj;
    }

    // Accepted: dense interpolant for every sample point inside (t, t+h].
    for (int i = 0; i < n; ++i) {
      const Cx ydiff = ynew[i] - y[i];
      const Cx bspl = h * k1[i] - ydiff;
      rc1[i] = y[i];
      rc2[i] = ydiff;
      rc3[i] = bspl;
      rc4[i] = ydiff - h * k7[i] - bspl;
      rc5[i] = h * (kD1 * k1[i] + kD3 * k3[i] + kD4 * k4[i] + kD5 * k5[i] +
                    kD6 * k6[i] + kD7 * k7[i]);
    }
    const double t_new = last_step ? t1 : t + h;
    while (next_sample < ns && sample_time(next_sample) <= t_new) {
      const double ts = sample_time(next_sample);
      const double theta = (ts - t) / h;
      Trajectory::Sample s;
      s.t = ts;
      s.w.resize(n);
      for (int i = 0; i < n; ++i) {
        s.w[i] = rc1[i] +
                 theta * (rc2[i] + (1.0 - theta) *
                                       (rc3[i] + theta * (rc4[i] +
                                                          (1.0 - theta) * rc5[i])));
      }
      if (!vec_finite_bounded(s.w)) {
        finish_abort(AbortReason::overflow);
        return traj;
      }
      traj.samples.push_back(std::move(s));
      ++next_sample;
    }

    t = t_new;
    std::swap(y, ynew);
    std::swap(k1, k7);  // first-same-as-last

    const double fac =
        std::clamp(kSafety * std::pow(err, -kAlpha) * std::pow(err_old, kBeta),
                   kShrink, last_rejected ? 1.0 : kGrow);
    h = std::min(h * fac, h_cap);
    err_old = std::max(err, 1e-4);
    last_rejected = false;
  }

  traj.completed = true;
  if (traj.samples.back().t < t1) traj.samples.push_back({t1, y});
  return traj;
}

std::optional<double> detect_instability(
    const std::vector<std::pair<double, double>>& ratio, double delta) {
  if (ratio.size() < 16) {
    throw InsufficientDataError(
        "instability detection needs at least 16 samples");
  }
  auto log_mag = [](double r) {
    if (!std::isfinite(r) || r == 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    return std::log(std::abs(r));
  };

  const std::size_t q = std::max<std::size_t>(1, ratio.size() / 4);
  std::vector<double> head(q);
  for (std::size_t i = 0; i < q; ++i) head[i] = log_mag(ratio[i].second);
  std::nth_element(head.begin(), head.begin() + q / 2, head.end());
  const double median = head[q / 2];

  for (const auto& [t, r] : ratio) {
    const double lm = log_mag(r);
    if (!std::isfinite(lm) || !std::isfinite(median) ||
        std::abs(lm - median) > delta) {
      return t;
    }
  }
  return std::nullopt;
}

}  // namespace asym
