#include <benchmark/benchmark.h>

#include "asym/companion.hpp"
#include "asym/eigen.hpp"
#include "asym/expansion.hpp"
#include "asym/integrate.hpp"
#include "asym/mollify.hpp"

using asym::CMatrix;
using asym::Cx;
using asym::LaurentPoly;

namespace {

asym::MatrixSeries two_by_two() {
  asym::MatrixSeries s;
  s.n = 2;
  s.r = 1;
  s.A.assign(3, CMatrix(2, 2));
  s.A[0] = CMatrix::diagonal({Cx{-1.0}, Cx{-0.5}});
  s.A[1](0, 0) = Cx{1.0};
  s.A[1](0, 1) = Cx{1.0};
  s.A[1](1, 0) = Cx{1.0};
  return s;
}

asym::MatrixSeries three_by_three() {
  asym::ScalarOperator op;
  op.n = 3;
  op.r = 2;
  op.a.resize(3);
  op.a[0].set(0, Cx{1.0});
  op.a[0].set(-1, Cx{-3.0});
  op.a[1] = LaurentPoly::constant(Cx{-2.0});
  return asym::scalar_to_system(op);
}

void BM_Expansion3x3(benchmark::State& state) {
  const asym::MatrixSeries s = three_by_three();
  for (auto _ : state) {
    benchmark::DoNotOptimize(asym::compute_expansion(s));
  }
}
BENCHMARK(BM_Expansion3x3);

void BM_Eigen5x5(benchmark::State& state) {
  // Fixed well-separated spectrum conjugated by a fixed mixing matrix.
  const int n = 5;
  std::vector<Cx> lambdas;
  for (int j = 0; j < n; ++j) lambdas.push_back(Cx{1.5 * j - 3.0, 0.1 * j});
  CMatrix s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s(i, j) = Cx{1.0 / (1.0 + i + j), i == j ? 1.0 : 0.1};
    }
  }
  const CMatrix a = s * CMatrix::diagonal(lambdas) * asym::mat_inverse(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asym::eigen_decompose(a));
  }
}
BENCHMARK(BM_Eigen5x5);

void BM_IntegrateRaw2x2(benchmark::State& state) {
  const asym::MatrixSeries s = two_by_two();
  const asym::MatrixFn rhs = [&s](double t, CMatrix& out) {
    s.eval_scaled(t, out);
  };
  asym::IntegratorConfig cfg;
  cfg.sample_count = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        asym::integrate_adaptive(rhs, {Cx{1.0}, Cx{1.0}}, 2.0, 10.0, cfg));
  }
}
BENCHMARK(BM_IntegrateRaw2x2);

void BM_MollifiedRhs(benchmark::State& state) {
  const asym::MatrixSeries s = two_by_two();
  asym::Expansion e = asym::compute_expansion(s);
  auto cols = asym::assemble_columns(e);
  asym::Mollifier m = asym::build_mollifier(
      e, cols, asym::MollifierMode::per_column, asym::PowerBase::one_plus_t);
  const asym::MollifiedSystem sys = asym::mollify_system(s, m);
  CMatrix out;
  double t = 1.0;
  for (auto _ : state) {
    sys.rhs(t, out);
    benchmark::DoNotOptimize(out);
    t = t < 200.0 ? t + 0.1 : 1.0;  // sweep the window, defeat caching
  }
}
BENCHMARK(BM_MollifiedRhs);

void BM_LaurentMultiply(benchmark::State& state) {
  LaurentPoly a, b;
  for (int k = -8; k <= 8; ++k) {
    a.set(k, Cx{1.0 / (1.0 + std::abs(k)), 0.5});
    b.set(k, Cx{0.25, -1.0 / (2.0 + std::abs(k))});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_LaurentMultiply);

}  // namespace

BENCHMARK_MAIN();
