#pragma once

// Graph files are UTF-8 JSON:
//
//   {
//     "format": "vsrcost.graph",
//     "schema_version": 1,
//     "name": "MobiVSR-1",
//     "channel_plan": "lipres-w64-s1-t512x1024-fc1024",
//     "input_shape": [1, 29, 96, 96],
//     "nodes": [
//       {"id": "frontend.conv1", "kind": "ds_conv3d", "in_channels": 1, ...},
//       {"id": "subgraph2.block1.conv1", "kind": "ds_conv2d", ..., "input": "..."},
//       ...
//     ],
//     "residual_edges": [{"source": "...", "destination": "..."}]
//   }
//
// Node fields by kind (defaults in parentheses):
//   conv2d, ds_conv2d   in_channels, out_channels, kernel, stride (1), padding ("same")
//   conv3d              conv2d fields + temporal_kernel, temporal_stride (1)
//   ds_conv3d           conv3d fields + pointwise_mode ("partial" | "full")
//   temporal_conv1d     in_channels, out_channels, kernel, stride (1), padding ("same")
//   fc                  in_features, out_features
//   maxpool             window, stride
//   batchnorm           channels, eps (1e-5)
//   global_avgpool      axes ("spatial" | "temporal")
//   relu, softmax, residual_add    no fields
// "input" is optional on every node and names the producing node, or
// "input" for the graph input; it defaults to the preceding node.

#include <filesystem>
#include <string>
#include <string_view>

#include "vsrcost/graph.h"

namespace vsrcost {

inline constexpr int kGraphSchemaVersion = 1;
inline constexpr std::string_view kGraphFormat = "vsrcost.graph";

std::string serialize_graph(const LayerGraph& graph);

// Throws SchemaError positioned at the offending byte, JSON path or node id.
LayerGraph parse_graph(std::string_view json_text);

void save_graph(const LayerGraph& graph, const std::filesystem::path& path);
LayerGraph load_graph(const std::filesystem::path& path);

}  // namespace vsrcost
