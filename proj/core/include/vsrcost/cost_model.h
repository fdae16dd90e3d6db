#pragma once

// Analytical parameter, memory-access and FLOP counts.
//
// Per-layer expressions, with Vi / Vo the input / output volumes and the
// kernel extents K (spatial), T (temporal), Tp (pointwise temporal):
//
//   layer            params             memory accesses              flops
//   conv2d           K^2 Ci Co          P + Vi K^2 Co + Vo           2 K^2 Ci Vo
//   conv3d           K^2 T Ci Co        P + Vi K^2 Co T + Vo         2 K^2 T Ci Vo
//   ds_conv2d        Ci (K^2 + Co)      P + Vi (K^2 + Co) + Vo       2 Ci (K^2 + Co) Vo/Co
//   ds_conv3d        Ci (K^2 T + Co Tp) P + Vi (K^2 T + Co Tp) + Vo  2 Ci (K^2 T + Co Tp) Vo/Co
//   temporal_conv1d  k Ci Co            P + Vi k Co + Vo             2 k Ci Vo
//   fc               I Q                P + Vi + Vo                  2 I Q
//
// With the partial pointwise kernel (Tp == T) the ds_conv3d row is
// Ci (K^2 + Co) T. Activations, pooling, normalization and residual adds
// cost nothing. Memory expressions are exact for stride 1 with same padding
// and an upper bound otherwise. The FLOP expressions match executed loop
// counts for any stride under same padding.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsrcost/graph.h"
#include "vsrcost/layer.h"

namespace vsrcost {

struct LayerCost {
  std::uint64_t params = 0;
  std::uint64_t memory_accesses = 0;
  std::uint64_t flops = 0;

  LayerCost& operator+=(const LayerCost& o) {
    params += o.params;
    memory_accesses += o.memory_accesses;
    flops += o.flops;
    return *this;
  }
  friend bool operator==(const LayerCost&, const LayerCost&) = default;
};

enum class DType { fp32, int8 };

std::string_view to_string(DType dtype);
std::optional<DType> parse_dtype(std::string_view text);

std::uint64_t params_of(const LayerSpec& layer);
std::uint64_t mem_access_of(const LayerSpec& layer, const Shape& input);
std::uint64_t flops_of(const LayerSpec& layer, const Shape& input);
LayerCost cost_of(const LayerSpec& layer, const Shape& input);

struct LayerCostEntry {
  std::string id;
  std::string kind;
  Shape input_shape;
  Shape output_shape;
  LayerCost cost;
};

struct CostReport {
  std::vector<LayerCostEntry> per_layer;
  LayerCost totals;
  std::uint64_t size_bytes = 0;
  DType dtype = DType::fp32;
};

// Bytes needed to store `params` weights split across `tensors` tensors:
// 4 per weight for fp32; 1 per weight plus an fp32 scale and int32 zero
// point per tensor for int8.
std::uint64_t weight_bytes(std::uint64_t params, std::uint64_t tensors, DType dtype);

// Per-layer costs with shapes propagated through the graph. Residual adds
// are free; skip-path convolutions are ordinary conv2d nodes.
CostReport aggregate(const LayerGraph& graph, const Shape& input, DType dtype = DType::fp32);
CostReport aggregate(const LayerGraph& graph, DType dtype = DType::fp32);

// Model-level figures in reporting units: MB (10^6 bytes), millions of
// parameters, thousands of memory accesses, billions of FLOPs.
struct ModelFigures {
  double size_mb = 0;
  double params_m = 0;
  double mem_access_k = 0;
  double flops_b = 0;
};

ModelFigures figures_of(const CostReport& report);

struct EfficiencyRatios {
  double acc_per_mb = 0;
  double acc_per_gflop = 0;
  double acc_per_mparam = 0;
  double acc_per_kaccess = 0;
};

// Accuracy (percent) divided by each figure. A zero figure yields a zero
// ratio rather than infinity.
EfficiencyRatios efficiency_ratios(const ModelFigures& figures, double accuracy);
EfficiencyRatios efficiency_ratios(const CostReport& report, double accuracy);

}  // namespace vsrcost
