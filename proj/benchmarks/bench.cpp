#include <benchmark/benchmark.h>

#include <random>

#include "tailalg/iterates.hpp"
#include "tailalg/product.hpp"
#include "tailalg/substoch.hpp"

using namespace tailalg;

namespace {

TailDependenceFunction sample_pl() {
  return TailDependenceFunction(AngularFunction::piecewise_linear(
      {0.0, 0.2, 0.45, 0.7, 1.0}, {0.0, 0.18, 0.28, 0.25, 0.0}));
}

void bm_exact_product_build(benchmark::State& state) {
  auto l1 = sample_pl();
  auto l2 = TailDependenceFunction(AngularFunction::plateau(1.0 / 3.0));
  for (auto _ : state) {
    auto r = exact_pl_product(Copula::product(2), {l1, l2});
    benchmark::DoNotOptimize(r(0.5, 0.5));
  }
}
BENCHMARK(bm_exact_product_build);

void bm_exact_product_eval(benchmark::State& state) {
  auto r = exact_pl_product(Copula::product(2),
                            {sample_pl(), TailDependenceFunction(
                                              AngularFunction::plateau(0.3))});
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    if (t > 1.0) t = 0.0;
    benchmark::DoNotOptimize(r(t, 1.0 - t));
  }
}
BENCHMARK(bm_exact_product_eval);

void bm_quadrature_product_eval(benchmark::State& state) {
  auto r = star_product(TailDependenceFunction(AngularFunction::clayton(1.0)),
                        sample_pl());
  for (auto _ : state) {
    benchmark::DoNotOptimize(r(0.4, 0.6));
  }
}
BENCHMARK(bm_quadrature_product_eval);

void bm_operator_apply(benchmark::State& state) {
  auto kernel = SubdistributionFunction::from_tdf(sample_pl());
  SubstochasticOperator t(kernel);
  StepFunction f({0.0, 0.5, 1.2, 2.0}, {1.0, 0.4, 0.9}, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(t.materialize(f));
  }
}
BENCHMARK(bm_operator_apply);

void bm_iterate_sequence(benchmark::State& state) {
  auto l = TailDependenceFunction(AngularFunction::plateau(1.0 / 3.0));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate_sequence(l, n));
  }
}
BENCHMARK(bm_iterate_sequence)->Arg(3)->Arg(6);

void bm_tail_extraction(benchmark::State& state) {
  auto c = Copula::ev_survival(AngularFunction::clayton(1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.extract_tail(0.5, 0.5, {}));
  }
}
BENCHMARK(bm_tail_extraction);

}  // namespace

BENCHMARK_MAIN();
