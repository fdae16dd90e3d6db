#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "reference.h"
#include "vsrcost/arch.h"
#include "vsrcost/errors.h"
#include "vsrcost/quantize.h"
#include "vsrcost/weights_io.h"

namespace vsrcost {
namespace {

TEST(Quantize, ConstantTensorDequantizesExactly) {
  for (float c : {0.37f, -2.5f, 0.0f, 1e-8f}) {
    QuantizedTensor q = quantize_tensor(Tensor::filled({3, 4}, c));
    const Tensor d = q.dequantize();
    for (float v : d.data()) EXPECT_EQ(v, c);
  }
}

TEST(Quantize, RoundingErrorBound) {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 50; ++trial) {
    Tensor w = testing::random_tensor({257}, rng);
    QuantizedTensor q = quantize_tensor(w);
    Tensor d = q.dequantize();
    const float scale = q.params().scale;
    for (std::int64_t i = 0; i < w.size(); ++i) {
      const float ulp = std::nextafter(std::abs(w[i]), INFINITY) - std::abs(w[i]);
      EXPECT_LE(std::abs(d[i] - w[i]), scale / 2 + ulp) << i;
    }
  }
}

TEST(Quantize, RangeEndpointsMapToInt8Limits) {
  Tensor w({3}, {-1.0f, 0.25f, 3.0f});
  QuantizedTensor q = quantize_tensor(w);
  EXPECT_FLOAT_EQ(q.params().scale, 4.0f / 255.0f);
  EXPECT_EQ(q.values()[0], -128);
  EXPECT_EQ(q.values()[2], 127);
}

TEST(Quantize, NonFiniteRejected) {
  EXPECT_THROW(quantize_tensor(Tensor({2}, {1.0f, NAN})), ValidationError);
}

TEST(Quantize, StoreRoundTripKeepsLayout) {
  WeightStore w = init_weights(build_mobivsr(1), 3);
  WeightStore q = quantize_int8(w);
  ASSERT_EQ(q.entries().size(), w.entries().size());
  for (const auto& e : q.entries()) EXPECT_TRUE(e.quantized());
  WeightStore d = dequantize_weights(q);
  for (std::size_t i = 0; i < d.entries().size(); ++i) {
    EXPECT_FALSE(d.entries()[i].quantized());
    EXPECT_EQ(d.entries()[i].shape(), w.entries()[i].shape());
  }
  EXPECT_EQ(quantize_int8(q), q);
}

TEST(Quantize, MobiVsr1FileUnderSixMegabytes) {
  const auto bytes = serialize_weights(quantize_int8(init_weights(build_mobivsr(1), 4)));
  EXPECT_LE(bytes.size(), 6'000'000u);
}

}  // namespace
}  // namespace vsrcost
