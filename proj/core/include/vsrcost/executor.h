#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vsrcost/graph.h"
#include "vsrcost/ledger.h"
#include "vsrcost/weights.h"

namespace vsrcost {

// Runs one layer. `residual` is the second operand of residual_add and is
// ignored by every other kind.
Tensor forward(const LayerSpec& layer, const Tensor& input, const LayerWeights& weights,
               const Tensor* residual = nullptr);

// Same as forward() and bit-identical to it, plus the layer's ledger.
// Pooling, activations, normalization and residual adds report zero.
std::pair<Tensor, CounterLedger> counted_forward(const LayerSpec& layer, const Tensor& input,
                                                 const LayerWeights& weights,
                                                 const Tensor* residual = nullptr);

struct GraphRun {
  Tensor output;
  CounterLedger total;
  std::vector<std::pair<std::string, CounterLedger>> per_layer;  // empty unless counted
};

// Executes the graph node by node, keeping only the intermediate tensors that
// later nodes still reference.
GraphRun run_graph(const LayerGraph& graph, const WeightStore& weights, const Tensor& input,
                   bool counted = false);

}  // namespace vsrcost
