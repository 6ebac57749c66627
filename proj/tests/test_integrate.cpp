#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"

#include "asym/errors.hpp"
#include "asym/integrate.hpp"
#include "support.hpp"

using asym::CMatrix;
using asym::Cx;
using asym::IntegratorConfig;
using asym::MatrixFn;
using asym::Trajectory;

namespace {

MatrixFn constant_rate(Cx c) {
  return [c](double, CMatrix& out) { out(0, 0) = c; };
}

// Diagonal system with exact solution (e^{-t^2/2}, e^{-t^2/4}).
const MatrixFn kGaussian = [](double t, CMatrix& out) {
  out.set_zero();
  out(0, 0) = Cx{-t};
  out(1, 1) = Cx{-t / 2.0};
};

}  // namespace

TEST_CASE("scalar exponential to default accuracy") {
  Trajectory traj =
      asym::integrate_adaptive(constant_rate(Cx{1}), {Cx{1}}, 0.0, 1.0);
  REQUIRE(traj.completed);
  CHECK(std::abs(traj.back().w[0] - Cx{std::exp(1.0)}) < 1e-8);
}

TEST_CASE("sampling contract on a completed run") {
  IntegratorConfig cfg;
  cfg.sample_count = 33;
  Trajectory traj = asym::integrate_adaptive(kGaussian, {Cx{1}, Cx{1}}, 0.0,
                                             3.0, cfg);
  REQUIRE(traj.completed);
  CHECK(traj.reason == asym::AbortReason::none);
  REQUIRE(traj.samples.size() == 33);
  CHECK(traj.samples.front().t == 0.0);
  CHECK(traj.back().t == 3.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  }
}

TEST_CASE("dense output stays within a small multiple of the tolerance") {
  IntegratorConfig cfg;
  cfg.rtol = 1e-8;
  cfg.atol = 1e-10;
  cfg.sample_count = 101;
  Trajectory traj = asym::integrate_adaptive(kGaussian, {Cx{1}, Cx{1}}, 0.0,
                                             3.0, cfg);
  REQUIRE(traj.completed);
  for (const auto& s : traj.samples) {
    const double e1 = std::exp(-s.t * s.t / 2.0);
    const double e2 = std::exp(-s.t * s.t / 4.0);
    CHECK(std::abs(s.w[0] - Cx{e1}) < 10 * (cfg.atol + cfg.rtol * e1));
    CHECK(std::abs(s.w[1] - Cx{e2}) < 10 * (cfg.atol + cfg.rtol * e2));
  }
}

TEST_CASE("error decreases monotonically with the tolerance") {
  double errs[3];
  int k = 0;
  for (double rtol : {1e-5, 1e-7, 1e-9}) {
    IntegratorConfig cfg;
    cfg.rtol = rtol;
    cfg.atol = rtol * 1e-2;
    Trajectory traj = asym::integrate_adaptive(kGaussian, {Cx{1}, Cx{1}}, 0.0,
                                               3.0, cfg);
    REQUIRE(traj.completed);
    errs[k++] = std::abs(traj.back().w[0] - Cx{std::exp(-4.5)});
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[2] < errs[1]);
}

TEST_CASE("rotations preserve the norm") {
  SUBCASE("real 2x2 rotation over ten revolutions") {
    MatrixFn rot = [](double, CMatrix& out) {
      out(0, 0) = Cx{0};
      out(0, 1) = Cx{1};
      out(1, 0) = Cx{-1};
      out(1, 1) = Cx{0};
    };
    IntegratorConfig cfg;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    const double t1 = 20.0 * 3.141592653589793;
    Trajectory traj = asym::integrate_adaptive(rot, {Cx{1}, Cx{0}}, 0.0, t1, cfg);
    REQUIRE(traj.completed);
    const Cx a = traj.back().w[0], b = traj.back().w[1];
    CHECK(std::abs(std::sqrt(std::norm(a) + std::norm(b)) - 1.0) < 1e-7);
    CHECK(std::abs(a - Cx{1}) < 1e-6);  // back to the start
    CHECK(std::abs(b) < 1e-6);
  }
  SUBCASE("complex phase factor lands on -1 at pi") {
    Trajectory traj = asym::integrate_adaptive(constant_rate(Cx{0, 1}), {Cx{1}},
                                               0.0, 3.141592653589793);
    REQUIRE(traj.completed);
    CHECK(std::abs(traj.back().w[0] - Cx{-1}) < 1e-7);
  }
}

TEST_CASE("step-size knobs do not change the answer") {
  IntegratorConfig a;
  IntegratorConfig b;
  b.h_init = 1e-4;
  b.h_max = 0.05;
  for (const IntegratorConfig& cfg : {a, b}) {
    Trajectory traj = asym::integrate_adaptive(kGaussian, {Cx{1}, Cx{1}}, 0.0,
                                               3.0, cfg);
    REQUIRE(traj.completed);
    CHECK(std::abs(traj.back().w[0] - Cx{std::exp(-4.5)}) < 1e-8);
  }
}

TEST_CASE("overflow aborts with the last trusted state") {
  // w' = t w blows through 1e300 near t = sqrt(2 log 1e300) ~ 37.2.
  MatrixFn growing = [](double t, CMatrix& out) { out(0, 0) = Cx{t}; };
  Trajectory traj = asym::integrate_adaptive(growing, {Cx{1}}, 0.0, 50.0);
  CHECK_FALSE(traj.completed);
  CHECK(traj.reason == asym::AbortReason::overflow);
  CHECK(traj.t_abort > 36.0);
  CHECK(traj.t_abort < 38.5);
  for (const auto& s : traj.samples) {
    CHECK(asym::is_finite(s.w[0]));
    CHECK(s.t <= traj.t_abort);
  }
}

TEST_CASE("step budget aborts mid-window") {
  IntegratorConfig cfg;
  cfg.max_steps = 5;
  Trajectory traj =
      asym::integrate_adaptive(constant_rate(Cx{-1}), {Cx{1}}, 0.0, 100.0, cfg);
  CHECK_FALSE(traj.completed);
  CHECK(traj.reason == asym::AbortReason::max_steps);
  CHECK(traj.t_abort < 100.0);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(
      asym::integrate_adaptive(constant_rate(Cx{1}), {Cx{1}}, 1.0, 1.0),
      asym::DomainError);
  CHECK_THROWS_AS(asym::integrate_adaptive(constant_rate(Cx{1}), {}, 0.0, 1.0),
                  asym::DimensionError);
  IntegratorConfig bad;
  bad.rtol = 0.0;
  CHECK_THROWS_AS(
      asym::integrate_adaptive(constant_rate(Cx{1}), {Cx{1}}, 0.0, 1.0, bad),
      asym::DomainError);
}

namespace {

// Flat ratio 1 through t = 5, then e^{t-5}; onset of the log-ratio band
// |log r| > delta at t = 5 + delta.
std::vector<std::pair<double, double>> synthetic_ratio(double growth_sign) {
  std::vector<std::pair<double, double>> r;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.05 * i;
    r.emplace_back(t, t <= 5.0 ? 1.0 : std::exp(growth_sign * (t - 5.0)));
  }
  return r;
}

}  // namespace

TEST_CASE("instability detection") {
  SUBCASE("flat series stays quiet") {
    std::vector<std::pair<double, double>> r;
    for (int i = 0; i < 100; ++i) r.emplace_back(0.1 * i, 2.5);
    CHECK_FALSE(asym::detect_instability(r).has_value());
  }
  SUBCASE("slow drift inside the band stays quiet") {
    std::vector<std::pair<double, double>> r;
    for (int i = 0; i < 100; ++i)
      r.emplace_back(0.1 * i, 1.0 + 0.3 * std::sin(0.02 * i));
    CHECK_FALSE(asym::detect_instability(r).has_value());
  }
  SUBCASE("exponential growth onset at default delta = log 2") {
    auto onset = asym::detect_instability(synthetic_ratio(+1.0));
    REQUIRE(onset.has_value());
    // First grid point past 5 + log 2 = 5.693...
    CHECK(*onset == doctest::Approx(5.7).epsilon(1e-12));
  }
  SUBCASE("decay is flagged just like growth") {
    auto onset = asym::detect_instability(synthetic_ratio(-1.0));
    REQUIRE(onset.has_value());
    CHECK(*onset == doctest::Approx(5.7).epsilon(1e-12));
  }
  SUBCASE("wider band moves the onset to 5 + delta") {
    auto onset = asym::detect_instability(synthetic_ratio(+1.0), 2.0);
    REQUIRE(onset.has_value());
    CHECK(*onset == doctest::Approx(7.05).epsilon(1e-12));
  }
  SUBCASE("a zero ratio is an immediate trigger") {
    std::vector<std::pair<double, double>> r;
    for (int i = 0; i < 100; ++i) r.emplace_back(0.1 * i, 1.0);
    r[70].second = 0.0;
    auto onset = asym::detect_instability(r);
    REQUIRE(onset.has_value());
    CHECK(*onset == doctest::Approx(7.0));
  }
  SUBCASE("a non-finite ratio is an immediate trigger") {
    std::vector<std::pair<double, double>> r;
    for (int i = 0; i < 100; ++i) r.emplace_back(0.1 * i, 1.0);
    r[50].second = std::nan("");
    auto onset = asym::detect_instability(r);
    REQUIRE(onset.has_value());
    CHECK(*onset == doctest::Approx(5.0));
  }
  SUBCASE("too few samples is an error") {
    std::vector<std::pair<double, double>> r(15, {0.0, 1.0});
    CHECK_THROWS_AS(asym::detect_instability(r), asym::InsufficientDataError);
  }
}
