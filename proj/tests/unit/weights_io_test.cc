#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>

#include "vsrcost/arch.h"
#include "vsrcost/cost_model.h"
#include "vsrcost/errors.h"
#include "vsrcost/quantize.h"
#include "vsrcost/weights_io.h"

namespace vsrcost {
namespace {

LayerGraph small_graph() {
  LayerGraph g;
  g.input_shape = {2, 3, 8, 8};
  g.add("a", DsConv3dSpec{2, 4, 3, 3});
  g.add("bn", BatchNormSpec{4});
  g.add("b", Conv2dSpec{4, 4, 3});
  g.add("p", GlobalAvgPoolSpec{PoolAxes::spatial});
  g.add("t", TemporalConv1dSpec{4, 5, 3});
  g.add("q", GlobalAvgPoolSpec{PoolAxes::temporal});
  g.add("fc", FullyConnectedSpec{5, 3});
  return g;
}

void put_u64(std::vector<std::uint8_t>& b, std::size_t at, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b[at + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[at + static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

TEST(InitWeights, DeterministicAndComplete) {
  LayerGraph g = small_graph();
  WeightStore a = init_weights(g, 42), b = init_weights(g, 42), c = init_weights(g, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_NO_THROW(check_weights(g, a));
  const auto* var = a.find("bn", "var");
  ASSERT_NE(var, nullptr);
  for (float v : std::get<Tensor>(var->value).data()) EXPECT_EQ(v, 1.0f);
}

TEST(CheckWeights, MissingAndMisshapedTensors) {
  LayerGraph g = small_graph();
  WeightStore w = init_weights(g, 1);
  WeightStore missing;
  for (const auto& e : w.entries())
    if (e.layer_id != "fc") missing.put(e.layer_id, e.role, e.value);
  EXPECT_THROW(check_weights(g, missing), SchemaError);

  WeightStore wrong = w;
  for (auto& e : wrong.entries())
    if (e.layer_id == "fc") e.value = Tensor({2, 5});
  EXPECT_THROW(check_weights(g, wrong), SchemaError);

  WeightStore extra = w;
  extra.put("ghost", "weight", Tensor({1}));
  EXPECT_THROW(check_weights(g, extra), SchemaError);
}

TEST(WeightsIo, Fp32RoundTripIsLossless) {
  WeightStore w = init_weights(small_graph(), 5);
  auto bytes = serialize_weights(w);
  EXPECT_EQ(parse_weights(bytes), w);
  EXPECT_EQ(std::memcmp(bytes.data(), "MVSRW1", 6), 0);
}

TEST(WeightsIo, Int8RoundTripIsLossless) {
  WeightStore q = quantize_int8(init_weights(small_graph(), 6));
  EXPECT_EQ(parse_weights(serialize_weights(q)), q);
}

TEST(WeightsIo, PayloadSizeInvariants) {
  LayerGraph g = build_mobivsr(1);
  WeightStore w = init_weights(g, 7);
  const auto elements = static_cast<std::uint64_t>(w.element_count());
  const auto tensors = static_cast<std::uint64_t>(w.entries().size());
  EXPECT_EQ(payload_bytes(w), 4 * elements);
  WeightStore q = quantize_int8(w);
  EXPECT_EQ(payload_bytes(q), elements + 8 * tensors);
  const auto bytes = serialize_weights(q);
  EXPECT_EQ(get_u64(bytes, bytes.size() - payload_bytes(q) - 8), payload_bytes(q));
  // Stored elements are the costed parameters plus batchnorm statistics.
  std::uint64_t bn = 0;
  for (const auto& e : w.entries())
    if (e.layer_id.ends_with(".bn")) bn += static_cast<std::uint64_t>(e.element_count());
  EXPECT_EQ(elements - bn, aggregate(g).totals.params);
}

TEST(WeightsIo, TruncatedPayloadIsPositionedError) {
  auto bytes = serialize_weights(init_weights(small_graph(), 8));
  bytes.resize(bytes.size() - 3);
  try {
    parse_weights(bytes);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.position().rfind("byte ", 0), 0u) << e.position();
  }
}

TEST(WeightsIo, TruncatedManifestIsPositionedError) {
  auto bytes = serialize_weights(init_weights(small_graph(), 8));
  bytes.resize(20);
  EXPECT_THROW(parse_weights(bytes), SchemaError);
}

TEST(WeightsIo, BadMagicRejectedAtByteZero) {
  auto bytes = serialize_weights(init_weights(small_graph(), 8));
  bytes[0] = 'X';
  try {
    parse_weights(bytes);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.position(), "byte 0");
  }
}

TEST(WeightsIo, OverlappingRegionsRejected) {
  WeightStore w;
  w.put("l", "a", Tensor::filled({2}, 1.0f));
  w.put("l", "b", Tensor::filled({2}, 2.0f));
  auto bytes = serialize_weights(w);
  // Second manifest entry: magic 6 + count 4 + first entry (2+1 + 2+1 + 1 + 1 + 4 + 8 + 8).
  const std::size_t second = 6 + 4 + 28;
  const std::size_t offset_at = second + 2 + 1 + 2 + 1 + 1 + 1 + 4;
  ASSERT_EQ(get_u64(bytes, offset_at), 8u);
  put_u64(bytes, offset_at, 4);
  EXPECT_THROW(parse_weights(bytes), SchemaError);
  put_u64(bytes, offset_at, 1000);
  EXPECT_THROW(parse_weights(bytes), SchemaError);
}

TEST(WeightsIo, FileRoundTripAndMissingFile) {
  const auto path = std::filesystem::temp_directory_path() / "vsrcost_weights_io_test.bin";
  WeightStore w = init_weights(small_graph(), 9);
  save_weights(w, path);
  EXPECT_EQ(load_weights(path), w);
  std::filesystem::remove(path);
  EXPECT_THROW(load_weights(path), IoError);
}

}  // namespace
}  // namespace vsrcost
