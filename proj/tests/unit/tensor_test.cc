#include <gtest/gtest.h>

#include "vsrcost/errors.h"
#include "vsrcost/tensor.h"

namespace vsrcost {
namespace {

TEST(Shape, VolumeIsProductOfExtents) {
  EXPECT_EQ(volume(Shape{2, 3, 4}), 24);
  EXPECT_EQ(volume(Shape{}), 1);
  EXPECT_EQ(volume(Shape{5, 0, 3}), 0);
}

TEST(Shape, ToStringUsesCrossSeparator) { EXPECT_EQ(to_string(Shape{29, 96, 96}), "[29x96x96]"); }

TEST(Tensor, ZeroFilledOnConstruction) {
  Tensor t({2, 3});
  EXPECT_EQ(t.size(), 6);
  for (float v : t.data()) EXPECT_EQ(v, 0.0f);
}

TEST(Tensor, RejectsNonPositiveExtents) {
  EXPECT_THROW(Tensor({2, 0}), ValidationError);
  EXPECT_THROW(Tensor({-1}), ValidationError);
}

TEST(Tensor, RejectsDataOfWrongLength) {
  EXPECT_THROW(Tensor({2, 2}, std::vector<float>(3)), ValidationError);
}

TEST(Tensor, ReshapeKeepsData) {
  Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
  Tensor r = t.reshaped({3, 2});
  EXPECT_EQ(r.shape(), (Shape{3, 2}));
  EXPECT_EQ(r[5], 6.0f);
  EXPECT_THROW(t.reshaped({4, 2}), ValidationError);
}

TEST(QuantizedTensor, DequantizeAppliesAffineMap) {
  QuantizedTensor q({3}, {-128, 0, 127}, QuantParams{0.5f, -128});
  Tensor d = q.dequantize();
  EXPECT_FLOAT_EQ(d[0], 0.0f);
  EXPECT_FLOAT_EQ(d[1], 64.0f);
  EXPECT_FLOAT_EQ(d[2], 127.5f);
}

TEST(QuantizedTensor, RejectsNonPositiveScale) {
  EXPECT_THROW(QuantizedTensor({1}, {0}, QuantParams{0.0f, 0}), ValidationError);
}

}  // namespace
}  // namespace vsrcost
