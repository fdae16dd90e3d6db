#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vsrcost/graph.h"
#include "vsrcost/tensor.h"

namespace vsrcost {

// Tensors a layer needs, keyed by role ("weight", "depthwise", "pointwise",
// "mean", "var", "gamma", "beta").
using LayerWeights = std::map<std::string, Tensor, std::less<>>;

struct ParamSlot {
  std::string role;
  Shape shape;
};

// Parameter tensors a layer kind expects, in storage order.
std::vector<ParamSlot> param_slots(const LayerSpec& spec);

struct WeightEntry {
  std::string layer_id;
  std::string role;
  std::variant<Tensor, QuantizedTensor> value;

  const Shape& shape() const;
  std::int64_t element_count() const;
  bool quantized() const { return std::holds_alternative<QuantizedTensor>(value); }

  friend bool operator==(const WeightEntry&, const WeightEntry&) = default;
};

class WeightStore {
 public:
  void put(std::string layer_id, std::string role, std::variant<Tensor, QuantizedTensor> value);

  const WeightEntry* find(std::string_view layer_id, std::string_view role) const;
  const std::vector<WeightEntry>& entries() const { return entries_; }
  std::vector<WeightEntry>& entries() { return entries_; }

  // fp32 tensors for one layer; int8 entries are dequantized.
  LayerWeights layer(std::string_view layer_id) const;

  std::int64_t element_count() const;

  friend bool operator==(const WeightStore&, const WeightStore&) = default;

 private:
  std::vector<WeightEntry> entries_;
};

// Seeded He-uniform initialization for every parameterized node.
// Batchnorm statistics start at the identity transform.
WeightStore init_weights(const LayerGraph& graph, std::uint64_t seed);

// Throws SchemaError if a tensor is missing, unexpected or mis-shaped.
void check_weights(const LayerGraph& graph, const WeightStore& weights);

}  // namespace vsrcost
