#include <benchmark/benchmark.h>

#include <random>

#include "vsrcost/ops.h"

namespace {

using namespace vsrcost;

Tensor random_tensor(Shape shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  Tensor t(std::move(shape));
  for (auto& v : t.data()) v = dist(rng);
  return t;
}

void BM_Conv2d(benchmark::State& state) {
  const auto side = state.range(0);
  Tensor x = random_tensor({16, side, side}, 1);
  Tensor w = random_tensor({32, 16, 3, 3}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d(x, w));
  state.SetItemsProcessed(state.iterations() * 2 * 9 * 16 * 32 * side * side);
}
BENCHMARK(BM_Conv2d)->Arg(12)->Arg(24)->Arg(48);

void BM_DsConv2d(benchmark::State& state) {
  const auto side = state.range(0);
  Tensor x = random_tensor({16, side, side}, 1);
  Tensor dw = random_tensor({16, 3, 3}, 2);
  Tensor pw = random_tensor({32, 16, 1, 1}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ds_conv2d(x, dw, pw));
  state.SetItemsProcessed(state.iterations() * 2 * 16 * (9 + 32) * side * side);
}
BENCHMARK(BM_DsConv2d)->Arg(12)->Arg(24)->Arg(48);

void BM_DsConv3dCounted(benchmark::State& state) {
  Tensor x = random_tensor({8, 29, 24, 24}, 1);
  Tensor dw = random_tensor({8, 3, 3, 3}, 2);
  Tensor pw = random_tensor({16, 8, 3, 1, 1}, 3);
  const bool counted = state.range(0) != 0;
  for (auto _ : state) {
    CounterLedger ledger;
    benchmark::DoNotOptimize(ds_conv3d(x, dw, pw, {}, PointwiseMode::partial, counted ? &ledger : nullptr));
  }
}
BENCHMARK(BM_DsConv3dCounted)->Arg(0)->Arg(1);

void BM_FullyConnected(benchmark::State& state) {
  Tensor x = random_tensor({1024}, 1);
  Tensor w = random_tensor({500, 1024}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fully_connected(x, w));
}
BENCHMARK(BM_FullyConnected);

}  // namespace
