#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsrcost/layer.h"
#include "vsrcost/tensor.h"

namespace vsrcost {

// Producer id that refers to the graph input.
inline constexpr std::string_view kGraphInput = "input";

struct Node {
  std::string id;
  LayerSpec spec;
  // Producer of this node's input; nullopt means the preceding node (or the
  // graph input for the first node).
  std::optional<std::string> input;

  friend bool operator==(const Node&, const Node&) = default;
};

// The destination (a residual_add node) adds the source's output to its own
// input.
struct ResidualEdge {
  std::string source;
  std::string destination;

  friend bool operator==(const ResidualEdge&, const ResidualEdge&) = default;
};

// Ordered layer list plus residual edges. Every producer precedes its
// consumers, so node order is a topological order and the graph is acyclic.
class LayerGraph {
 public:
  std::string name;
  std::string channel_plan;
  Shape input_shape;

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<ResidualEdge>& residuals() const { return residuals_; }
  bool empty() const { return nodes_.empty(); }

  // Throws SchemaError on duplicate ids or unknown producers.
  const Node& add(std::string id, LayerSpec spec, std::optional<std::string> input = std::nullopt);
  void add_residual(std::string source, std::string destination);

  const Node* find(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  // Resolved producer id for node i (kGraphInput for the graph input).
  std::string producer_of(std::size_t i) const;

  // Source of the residual edge ending at `destination`, if any.
  std::optional<std::string> residual_source(std::string_view destination) const;

  // Structural checks: every residual_add has exactly one incoming edge,
  // edges end at residual_add nodes and sources precede destinations.
  void validate() const;

  // Output shape of every node, in order. Throws DimensionError naming the
  // first edge whose shapes are inconsistent.
  std::vector<Shape> infer_shapes(const Shape& input) const;
  std::vector<Shape> infer_shapes() const { return infer_shapes(input_shape); }

  friend bool operator==(const LayerGraph&, const LayerGraph&) = default;

 private:
  std::vector<Node> nodes_;
  std::vector<ResidualEdge> residuals_;
};

}  // namespace vsrcost
