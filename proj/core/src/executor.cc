#include "vsrcost/executor.h"

#include <map>
#include <string>

#include "vsrcost/errors.h"
#include "vsrcost/ops.h"

namespace vsrcost {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Tensor& param(const LayerSpec& layer, const LayerWeights& weights, std::string_view role) {
  auto it = weights.find(role);
  if (it == weights.end()) {
    throw ValidationError(std::string(kind_name(layer)) + ": missing weight tensor '" +
                          std::string(role) + "'");
  }
  return it->second;
}

Tensor apply(const LayerSpec& layer, const Tensor& input, const LayerWeights& w,
             const Tensor* residual, CounterLedger* ledger) {
  validate(layer);
  return std::visit(
      Overloaded{
          [&](const Conv2dSpec& s) {
            return conv2d(input, param(layer, w, "weight"), {s.stride, 1, s.padding}, ledger);
          },
          [&](const Conv3dSpec& s) {
            return conv3d(input, param(layer, w, "weight"),
                          {s.stride, s.temporal_stride, s.padding}, ledger);
          },
          [&](const DsConv2dSpec& s) {
            return ds_conv2d(input, param(layer, w, "depthwise"), param(layer, w, "pointwise"),
                             {s.stride, 1, s.padding}, ledger);
          },
          [&](const DsConv3dSpec& s) {
            return ds_conv3d(input, param(layer, w, "depthwise"), param(layer, w, "pointwise"),
                             {s.stride, s.temporal_stride, s.padding}, s.pointwise_mode, ledger);
          },
          [&](const TemporalConv1dSpec& s) {
            return temporal_conv1d(input, param(layer, w, "weight"), {s.stride, 1, s.padding},
                                   ledger);
          },
          [&](const FullyConnectedSpec&) {
            return fully_connected(input, param(layer, w, "weight"), ledger);
          },
          [&](const MaxPoolSpec& s) { return maxpool(input, s.window, s.stride); },
          [&](const ReluSpec&) { return relu(input); },
          [&](const BatchNormSpec& s) {
            return batchnorm_inference(input, param(layer, w, "mean"), param(layer, w, "var"),
                                       param(layer, w, "gamma"), param(layer, w, "beta"), s.eps);
          },
          [&](const SoftmaxSpec&) { return softmax(input); },
          [&](const ResidualAddSpec&) {
            if (!residual) throw ValidationError("residual_add: missing residual operand");
            return residual_add(input, *residual);
          },
          [&](const GlobalAvgPoolSpec& s) { return global_avgpool(input, s.axes); },
      },
      layer);
}

}  // namespace

Tensor forward(const LayerSpec& layer, const Tensor& input, const LayerWeights& weights,
               const Tensor* residual) {
  return apply(layer, input, weights, residual, nullptr);
}

std::pair<Tensor, CounterLedger> counted_forward(const LayerSpec& layer, const Tensor& input,
                                                 const LayerWeights& weights,
                                                 const Tensor* residual) {
  CounterLedger ledger;
  Tensor out = apply(layer, input, weights, residual, &ledger);
  return {std::move(out), ledger};
}

GraphRun run_graph(const LayerGraph& graph, const WeightStore& weights, const Tensor& input,
                   bool counted) {
  graph.validate();
  const auto& nodes = graph.nodes();

  // Last position at which each producer's output is read.
  std::map<std::string, std::size_t, std::less<>> last_use;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    last_use[graph.producer_of(i)] = i;
    if (auto src = graph.residual_source(nodes[i].id)) last_use[*src] = i;
  }

  std::map<std::string, Tensor, std::less<>> live;
  live.emplace(std::string(kGraphInput), input);
  GraphRun run;
  Tensor current = input;

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    const std::string producer = graph.producer_of(i);
    const Tensor& in = live.at(producer);
    const Tensor* skip = nullptr;
    if (auto src = graph.residual_source(node.id)) skip = &live.at(*src);

    const LayerWeights w = weights.layer(node.id);
    Tensor out;
    try {
      if (counted) {
        auto [t, ledger] = counted_forward(node.spec, in, w, skip);
        out = std::move(t);
        run.total += ledger;
        run.per_layer.emplace_back(node.id, ledger);
      } else {
        out = forward(node.spec, in, w, skip);
      }
    } catch (const DimensionError& e) {
      throw DimensionError(node.id, std::string("edge '") + producer + "' -> '" + node.id +
                                        "': " + e.what());
    }

    for (auto it = live.begin(); it != live.end();) {
      auto use = last_use.find(it->first);
      const bool dead = use == last_use.end() || use->second <= i;
      it = dead ? live.erase(it) : std::next(it);
    }
    if (i + 1 == nodes.size()) {
      current = std::move(out);
    } else {
      live.insert_or_assign(node.id, std::move(out));
    }
  }
  run.output = std::move(current);
  return run;
}

}  // namespace vsrcost
