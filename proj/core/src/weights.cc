#include "vsrcost/weights.h"

#include <cmath>
#include <random>
#include <utility>

#include "vsrcost/errors.h"

namespace vsrcost {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Tensor he_uniform(Shape shape, std::int64_t fan_in, std::mt19937_64& rng) {
  const float bound = std::sqrt(6.0f / static_cast<float>(fan_in));
  std::uniform_real_distribution<float> dist(-bound, bound);
  Tensor t(std::move(shape));
  for (auto& v : t.data()) v = dist(rng);
  return t;
}

}  // namespace

std::vector<ParamSlot> param_slots(const LayerSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Conv2dSpec& s) {
            return std::vector<ParamSlot>{
                {"weight", {s.out_channels, s.in_channels, s.kernel, s.kernel}}};
          },
          [](const Conv3dSpec& s) {
            return std::vector<ParamSlot>{
                {"weight",
                 {s.out_channels, s.in_channels, s.temporal_kernel, s.kernel, s.kernel}}};
          },
          [](const DsConv2dSpec& s) {
            return std::vector<ParamSlot>{
                {"depthwise", {s.in_channels, s.kernel, s.kernel}},
                {"pointwise", {s.out_channels, s.in_channels, 1, 1}}};
          },
          [](const DsConv3dSpec& s) {
            return std::vector<ParamSlot>{
                {"depthwise", {s.in_channels, s.temporal_kernel, s.kernel, s.kernel}},
                {"pointwise",
                 {s.out_channels, s.in_channels, s.pointwise_temporal_kernel(), 1, 1}}};
          },
          [](const TemporalConv1dSpec& s) {
            return std::vector<ParamSlot>{{"weight", {s.out_channels, s.in_channels, s.kernel}}};
          },
          [](const FullyConnectedSpec& s) {
            return std::vector<ParamSlot>{{"weight", {s.out_features, s.in_features}}};
          },
          [](const BatchNormSpec& s) {
            return std::vector<ParamSlot>{{"mean", {s.channels}},
                                          {"var", {s.channels}},
                                          {"gamma", {s.channels}},
                                          {"beta", {s.channels}}};
          },
          [](const auto&) { return std::vector<ParamSlot>{}; },
      },
      spec);
}

const Shape& WeightEntry::shape() const {
  return std::visit([](const auto& t) -> const Shape& { return t.shape(); }, value);
}

std::int64_t WeightEntry::element_count() const {
  return std::visit([](const auto& t) { return t.size(); }, value);
}

void WeightStore::put(std::string layer_id, std::string role,
                      std::variant<Tensor, QuantizedTensor> value) {
  for (auto& e : entries_) {
    if (e.layer_id == layer_id && e.role == role) {
      e.value = std::move(value);
      return;
    }
  }
  entries_.push_back(WeightEntry{std::move(layer_id), std::move(role), std::move(value)});
}

const WeightEntry* WeightStore::find(std::string_view layer_id, std::string_view role) const {
  for (const auto& e : entries_)
    if (e.layer_id == layer_id && e.role == role) return &e;
  return nullptr;
}

LayerWeights WeightStore::layer(std::string_view layer_id) const {
  LayerWeights out;
  for (const auto& e : entries_) {
    if (e.layer_id != layer_id) continue;
    out.emplace(e.role, std::visit(Overloaded{[](const Tensor& t) { return t; },
                                              [](const QuantizedTensor& q) { return q.dequantize(); }},
                                   e.value));
  }
  return out;
}

std::int64_t WeightStore::element_count() const {
  std::int64_t n = 0;
  for (const auto& e : entries_) n += e.element_count();
  return n;
}

WeightStore init_weights(const LayerGraph& graph, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  WeightStore store;
  for (const auto& node : graph.nodes()) {
    if (const auto* bn = std::get_if<BatchNormSpec>(&node.spec)) {
      store.put(node.id, "mean", Tensor::filled({bn->channels}, 0.0f));
      store.put(node.id, "var", Tensor::filled({bn->channels}, 1.0f));
      store.put(node.id, "gamma", Tensor::filled({bn->channels}, 1.0f));
      store.put(node.id, "beta", Tensor::filled({bn->channels}, 0.0f));
      continue;
    }
    for (auto& slot : param_slots(node.spec)) {
      // Fan-in is everything but the leading (output or group) axis.
      const std::int64_t fan_in = volume(slot.shape) / slot.shape.front();
      store.put(node.id, slot.role, he_uniform(slot.shape, fan_in, rng));
    }
  }
  return store;
}

void check_weights(const LayerGraph& graph, const WeightStore& weights) {
  std::size_t expected = 0;
  for (const auto& node : graph.nodes()) {
    for (const auto& slot : param_slots(node.spec)) {
      ++expected;
      const WeightEntry* e = weights.find(node.id, slot.role);
      if (!e) throw SchemaError(node.id, "missing weight tensor '" + slot.role + "'");
      if (e->shape() != slot.shape) {
        throw SchemaError(node.id, "tensor '" + slot.role + "' has shape " + to_string(e->shape()) +
                                       ", graph expects " + to_string(slot.shape));
      }
    }
  }
  if (weights.entries().size() != expected) {
    for (const auto& e : weights.entries()) {
      const Node* n = graph.find(e.layer_id);
      bool known = false;
      if (n) {
        for (const auto& slot : param_slots(n->spec)) known = known || slot.role == e.role;
      }
      if (!known) throw SchemaError(e.layer_id, "unexpected weight tensor '" + e.role + "'");
    }
  }
}

}  // namespace vsrcost
