#include <benchmark/benchmark.h>

#include "bjg/classifiers.hpp"
#include "bjg/random_instances.hpp"

using namespace bjg;

namespace {

NormedSpace space_for(int i, Field field = Field::Real) {
  switch (i) {
    case 0: return {field, Sup{}};
    case 1: return {field, Lp{1.0}};
    default: return {field, Lp{2.0}};
  }
}

void BM_Norm(benchmark::State& state) {
  Rng rng(1);
  const auto s = space_for(static_cast<int>(state.range(0)));
  const auto x = random_vector(Field::Real, static_cast<std::size_t>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(norm(s, x));
}
BENCHMARK(BM_Norm)->ArgsProduct({{0, 1, 2}, {4, 64}});

void BM_ExactDerivatives(benchmark::State& state) {
  Rng rng(2);
  const auto s = space_for(static_cast<int>(state.range(0)));
  const auto x = random_nonzero_vector(s, 8, rng);
  const auto y = random_vector(Field::Real, 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exact_derivatives(s.norm, x, y));
}
BENCHMARK(BM_ExactDerivatives)->DenseRange(0, 2);

void BM_Brackets(benchmark::State& state) {
  Rng rng(3);
  const auto s = space_for(static_cast<int>(state.range(0)));
  const auto x = random_nonzero_vector(s, 8, rng);
  const auto y = random_vector(Field::Real, 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(one_sided_derivatives(s, x, y, DerivativeMethod::Brackets));
}
BENCHMARK(BM_Brackets)->DenseRange(0, 2);

void BM_IsBjOrthogonal(benchmark::State& state) {
  Rng rng(4);
  const auto field = state.range(1) ? Field::Complex : Field::Real;
  const auto s = space_for(static_cast<int>(state.range(0)), field);
  const auto x = random_nonzero_vector(s, 4, rng);
  const auto y = random_vector(field, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(is_bj_orthogonal(s, x, y));
}
BENCHMARK(BM_IsBjOrthogonal)->ArgsProduct({{0, 1, 2}, {0, 1}});

void BM_CkxOrthogonal(benchmark::State& state) {
  Rng rng(5);
  const auto field = state.range(1) ? Field::Complex : Field::Real;
  const auto k = KModel::discrete(static_cast<std::size_t>(state.range(0)));
  const NormedSpace s{field, Sup{}};
  const auto f = random_function(k, s, 3, rng, FunctionShape::TwoPointNormSet);
  const auto g = random_function(k, s, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ckx_orthogonal(f, g));
}
BENCHMARK(BM_CkxOrthogonal)->ArgsProduct({{4, 64}, {0, 1}});

void BM_CkxOracle(benchmark::State& state) {
  Rng rng(6);
  const auto k = KModel::discrete(static_cast<std::size_t>(state.range(0)));
  const NormedSpace s{Field::Real, Lp{2.0}};
  const auto f = random_function(k, s, 3, rng);
  const auto g = random_function(k, s, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ckx_oracle(f, g));
}
BENCHMARK(BM_CkxOracle)->Arg(4)->Arg(64);

void BM_RightProjection(benchmark::State& state) {
  Rng rng(7);
  const auto field = state.range(0) ? Field::Complex : Field::Real;
  const auto k = KModel::sampled_interval(16);
  const NormedSpace s{field, Lp{2.0}};
  const auto f = random_function(k, s, 3, rng, FunctionShape::FullNormSet);
  const auto g = random_function(k, s, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(right_projection(f, g));
}
BENCHMARK(BM_RightProjection)->Arg(0)->Arg(1);

void BM_ClassifyLeft(benchmark::State& state) {
  Rng rng(8);
  const auto k = KModel::discrete(6);
  const NormedSpace s{Field::Real, Lp{2.0}};
  const auto f = random_function(k, s, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(classify_left_symmetric(f));
}
BENCHMARK(BM_ClassifyLeft);

}  // namespace

BENCHMARK_MAIN();
