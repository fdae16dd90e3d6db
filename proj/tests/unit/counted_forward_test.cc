#include <gtest/gtest.h>

#include <random>

#include "layer_fixtures.h"
#include "vsrcost/executor.h"
#include "vsrcost/ops.h"

namespace vsrcost {
namespace {

using testing::random_layer_weights;
using testing::random_tensor;

TEST(CountedForward, Conv2dGoldenLedger) {
  Conv2dSpec spec{.in_channels = 3, .out_channels = 64, .kernel = 3};
  std::mt19937_64 rng(20);
  auto w = random_layer_weights(spec, rng);
  auto [out, ledger] = counted_forward(spec, random_tensor({3, 100, 100}, rng), w);
  EXPECT_EQ(out.shape(), (Shape{64, 100, 100}));
  EXPECT_EQ(ledger.flops(), 34'560'000u);
  EXPECT_EQ(ledger.memory_accesses(), 17'921'728u);
}

TEST(CountedForward, FullyConnectedHandCount) {
  FullyConnectedSpec spec{.in_features = 3, .out_features = 2};
  std::mt19937_64 rng(21);
  auto [out, ledger] = counted_forward(spec, random_tensor({3}, rng), random_layer_weights(spec, rng));
  EXPECT_EQ(ledger.multiplies, 6u);
  EXPECT_EQ(ledger.adds, 6u);
  EXPECT_EQ(ledger.param_reads, 6u);
  EXPECT_EQ(ledger.activation_reads, 3u);
  EXPECT_EQ(ledger.output_writes, 2u);
}

TEST(CountedForward, ZeroCostKindsReportEmptyLedger) {
  std::mt19937_64 rng(22);
  Tensor x = random_tensor({2, 4, 4}, rng);
  for (const LayerSpec& spec : {LayerSpec{ReluSpec{}}, LayerSpec{SoftmaxSpec{}},
                                LayerSpec{MaxPoolSpec{2, 2}}, LayerSpec{BatchNormSpec{2}},
                                LayerSpec{GlobalAvgPoolSpec{PoolAxes::spatial}}}) {
    auto [out, ledger] = counted_forward(spec, x, random_layer_weights(spec, rng));
    EXPECT_EQ(ledger, CounterLedger{}) << kind_name(spec);
  }
  auto [sum, ledger] = counted_forward(ResidualAddSpec{}, x, {}, &x);
  EXPECT_EQ(ledger, CounterLedger{});
  EXPECT_EQ(sum[0], 2 * x[0]);
}

TEST(CountedForward, CountingDoesNotChangeOutputs) {
  std::mt19937_64 rng(23);
  struct Case {
    LayerSpec spec;
    Shape input;
  };
  const std::vector<Case> cases = {
      {Conv2dSpec{2, 3, 3, 2, Padding::same}, {2, 7, 7}},
      {Conv3dSpec{2, 3, 3, 3, 1, 2, Padding::valid}, {2, 5, 6, 6}},
      {DsConv2dSpec{3, 4, 3, 1, Padding::same}, {3, 2, 6, 6}},
      {DsConv3dSpec{2, 3, 3, 3, 2, 1, Padding::same, PointwiseMode::partial}, {2, 4, 6, 6}},
      {DsConv3dSpec{2, 3, 3, 3, 1, 1, Padding::same, PointwiseMode::full}, {2, 4, 6, 6}},
      {TemporalConv1dSpec{4, 2, 3, 1, Padding::same}, {4, 9}},
      {FullyConnectedSpec{5, 3}, {5}},
  };
  for (const auto& c : cases) {
    auto w = random_layer_weights(c.spec, rng);
    Tensor x = random_tensor(c.input, rng);
    Tensor plain = forward(c.spec, x, w);
    auto [counted, ledger] = counted_forward(c.spec, x, w);
    EXPECT_EQ(plain, counted) << kind_name(c.spec);
    EXPECT_GT(ledger.flops(), 0u);
    EXPECT_EQ(ledger.multiplies, ledger.adds);
    EXPECT_EQ(ledger.output_writes, static_cast<std::uint64_t>(plain.size()));
  }
}

TEST(CountedForward, StridedLedgerCountsTrueLoopIterations) {
  Conv2dSpec spec{.in_channels = 2, .out_channels = 3, .kernel = 3, .stride = 2};
  std::mt19937_64 rng(24);
  auto [out, ledger] = counted_forward(spec, random_tensor({2, 8, 8}, rng), random_layer_weights(spec, rng));
  ASSERT_EQ(out.shape(), (Shape{3, 4, 4}));
  const std::uint64_t macs = 3 * 4 * 4 * 2 * 9;
  EXPECT_EQ(ledger.multiplies, macs);
  EXPECT_EQ(ledger.activation_reads, macs);
  EXPECT_EQ(ledger.param_reads, 54u);
}

}  // namespace
}  // namespace vsrcost
