#include "vsrcost/cost_model.h"

#include "vsrcost/errors.h"
#include "vsrcost/weights.h"

namespace vsrcost {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using u64 = std::uint64_t;

u64 u(std::int64_t v) { return static_cast<u64>(v); }

// Input-read term R (the middle term of the memory expression).
u64 reads_of(const LayerSpec& layer, u64 vi) {
  return std::visit(
      Overloaded{
          [&](const Conv2dSpec& s) { return vi * u(s.kernel * s.kernel * s.out_channels); },
          [&](const Conv3dSpec& s) {
            return vi * u(s.kernel * s.kernel * s.out_channels) * u(s.temporal_kernel);
          },
          [&](const DsConv2dSpec& s) { return vi * u(s.kernel * s.kernel + s.out_channels); },
          [&](const DsConv3dSpec& s) {
            return vi * u(s.kernel * s.kernel * s.temporal_kernel +
                          s.out_channels * s.pointwise_temporal_kernel());
          },
          [&](const TemporalConv1dSpec& s) { return vi * u(s.kernel * s.out_channels); },
          [&](const FullyConnectedSpec&) { return vi; },
          [](const auto&) { return u64{0}; },
      },
      layer);
}

}  // namespace

std::string_view to_string(DType dtype) { return dtype == DType::fp32 ? "fp32" : "int8"; }

std::optional<DType> parse_dtype(std::string_view text) {
  if (text == "fp32") return DType::fp32;
  if (text == "int8") return DType::int8;
  return std::nullopt;
}

u64 params_of(const LayerSpec& layer) {
  validate(layer);
  return std::visit(
      Overloaded{
          [](const Conv2dSpec& s) { return u(s.kernel * s.kernel * s.in_channels * s.out_channels); },
          [](const Conv3dSpec& s) {
            return u(s.kernel * s.kernel * s.temporal_kernel * s.in_channels * s.out_channels);
          },
          [](const DsConv2dSpec& s) { return u(s.in_channels * (s.kernel * s.kernel + s.out_channels)); },
          [](const DsConv3dSpec& s) {
            return u(s.in_channels * (s.kernel * s.kernel * s.temporal_kernel +
                                      s.out_channels * s.pointwise_temporal_kernel()));
          },
          [](const TemporalConv1dSpec& s) { return u(s.kernel * s.in_channels * s.out_channels); },
          [](const FullyConnectedSpec& s) { return u(s.in_features * s.out_features); },
          [](const auto&) { return u64{0}; },
      },
      layer);
}

u64 mem_access_of(const LayerSpec& layer, const Shape& input) {
  if (!is_costed(layer)) {
    validate(layer);
    return 0;
  }
  const Shape output = infer_output_shape(layer, input);
  const u64 vi = u(volume(input));
  const u64 vo = u(volume(output));
  return params_of(layer) + reads_of(layer, vi) + vo;
}

u64 flops_of(const LayerSpec& layer, const Shape& input) {
  if (!is_costed(layer)) {
    validate(layer);
    return 0;
  }
  const Shape output = infer_output_shape(layer, input);
  const u64 vo = u(volume(output));
  return std::visit(
      Overloaded{
          [&](const Conv2dSpec& s) { return 2 * u(s.kernel * s.kernel * s.in_channels) * vo; },
          [&](const Conv3dSpec& s) {
            return 2 * u(s.kernel * s.kernel * s.temporal_kernel * s.in_channels) * vo;
          },
          // DS forms use the output volume per channel so the arithmetic
          // stays in integers: 2 Ci (K^2 / Co + 1) Vo == 2 (Vo / Co) Ci (K^2 + Co).
          [&](const DsConv2dSpec& s) {
            const u64 spatial = vo / u(s.out_channels);
            return 2 * spatial * u(s.in_channels) * u(s.kernel * s.kernel + s.out_channels);
          },
          [&](const DsConv3dSpec& s) {
            const u64 spatial = vo / u(s.out_channels);
            return 2 * spatial * u(s.in_channels) *
                   u(s.kernel * s.kernel * s.temporal_kernel +
                     s.out_channels * s.pointwise_temporal_kernel());
          },
          [&](const TemporalConv1dSpec& s) { return 2 * u(s.kernel * s.in_channels) * vo; },
          [&](const FullyConnectedSpec& s) {
            return vo == 0 ? u64{0} : 2 * u(s.in_features * s.out_features);
          },
          [](const auto&) { return u64{0}; },
      },
      layer);
}

LayerCost cost_of(const LayerSpec& layer, const Shape& input) {
  return {params_of(layer), mem_access_of(layer, input), flops_of(layer, input)};
}

u64 weight_bytes(u64 params, u64 tensors, DType dtype) {
  if (dtype == DType::fp32) return 4 * params;
  return params + tensors * (sizeof(float) + sizeof(std::int32_t));
}

CostReport aggregate(const LayerGraph& graph, const Shape& input, DType dtype) {
  CostReport report;
  report.dtype = dtype;
  const auto shapes = graph.infer_shapes(input);
  u64 tensors = 0;
  for (std::size_t i = 0; i < graph.nodes().size(); ++i) {
    const Node& node = graph.nodes()[i];
    const std::string producer = graph.producer_of(i);
    const Shape& in = producer == kGraphInput ? input : shapes[*graph.index_of(producer)];
    LayerCostEntry entry{node.id, std::string(kind_name(node.spec)), in, shapes[i],
                         cost_of(node.spec, in)};
    if (is_costed(node.spec)) tensors += param_slots(node.spec).size();
    report.totals += entry.cost;
    report.per_layer.push_back(std::move(entry));
  }
  report.size_bytes = weight_bytes(report.totals.params, tensors, dtype);
  return report;
}

CostReport aggregate(const LayerGraph& graph, DType dtype) {
  return aggregate(graph, graph.input_shape, dtype);
}

ModelFigures figures_of(const CostReport& report) {
  return {static_cast<double>(report.size_bytes) / 1e6,
          static_cast<double>(report.totals.params) / 1e6,
          static_cast<double>(report.totals.memory_accesses) / 1e3,
          static_cast<double>(report.totals.flops) / 1e9};
}

EfficiencyRatios efficiency_ratios(const ModelFigures& f, double accuracy) {
  auto ratio = [&](double denom) { return denom > 0.0 ? accuracy / denom : 0.0; };
  return {ratio(f.size_mb), ratio(f.flops_b), ratio(f.params_m), ratio(f.mem_access_k)};
}

EfficiencyRatios efficiency_ratios(const CostReport& report, double accuracy) {
  return efficiency_ratios(figures_of(report), accuracy);
}

}  // namespace vsrcost
