#include "vsrcost/graph.h"

#include <algorithm>
#include <utility>

#include "vsrcost/errors.h"

namespace vsrcost {

const Node& LayerGraph::add(std::string id, LayerSpec spec, std::optional<std::string> input) {
  if (id.empty() || id == kGraphInput) throw SchemaError(id, "invalid node id");
  if (find(id)) throw SchemaError(id, "duplicate node id");
  if (input && *input != kGraphInput && !find(*input)) {
    throw SchemaError(id, "input refers to unknown or later node '" + *input + "'");
  }
  nodes_.push_back(Node{std::move(id), std::move(spec), std::move(input)});
  return nodes_.back();
}

void LayerGraph::add_residual(std::string source, std::string destination) {
  residuals_.push_back(ResidualEdge{std::move(source), std::move(destination)});
}

const Node* LayerGraph::find(std::string_view id) const {
  auto it = std::find_if(nodes_.begin(), nodes_.end(), [&](const Node& n) { return n.id == id; });
  return it == nodes_.end() ? nullptr : &*it;
}

std::optional<std::size_t> LayerGraph::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].id == id) return i;
  return std::nullopt;
}

std::string LayerGraph::producer_of(std::size_t i) const {
  const Node& n = nodes_.at(i);
  if (n.input) return *n.input;
  return i == 0 ? std::string(kGraphInput) : nodes_[i - 1].id;
}

std::optional<std::string> LayerGraph::residual_source(std::string_view destination) const {
  for (const auto& e : residuals_)
    if (e.destination == destination) return e.source;
  return std::nullopt;
}

void LayerGraph::validate() const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    for (std::size_t j = 0; j < i; ++j)
      if (nodes_[j].id == n.id) throw SchemaError(n.id, "duplicate node id");
    if (n.input && *n.input != kGraphInput) {
      auto p = index_of(*n.input);
      if (!p || *p >= i) throw SchemaError(n.id, "input '" + *n.input + "' does not precede node");
    }
    try {
      vsrcost::validate(n.spec);
    } catch (const ValidationError& e) {
      throw SchemaError(n.id, e.what());
    }
  }
  for (const auto& e : residuals_) {
    auto dst = index_of(e.destination);
    if (!dst) throw SchemaError(e.destination, "residual edge ends at unknown node");
    if (!std::holds_alternative<ResidualAddSpec>(nodes_[*dst].spec)) {
      throw SchemaError(e.destination, "residual edge must end at a residual_add node");
    }
    if (e.source != kGraphInput) {
      auto src = index_of(e.source);
      if (!src || *src >= *dst) {
        throw SchemaError(e.destination, "residual source '" + e.source + "' does not precede it");
      }
    }
  }
  for (const auto& n : nodes_) {
    if (!std::holds_alternative<ResidualAddSpec>(n.spec)) continue;
    auto count = std::count_if(residuals_.begin(), residuals_.end(),
                               [&](const ResidualEdge& e) { return e.destination == n.id; });
    if (count != 1) {
      throw SchemaError(n.id, "residual_add needs exactly one residual edge, found " +
                                  std::to_string(count));
    }
  }
}

std::vector<Shape> LayerGraph::infer_shapes(const Shape& input) const {
  validate();
  std::vector<Shape> shapes;
  shapes.reserve(nodes_.size());
  auto shape_of = [&](const std::string& id) -> const Shape& {
    if (id == kGraphInput) return input;
    return shapes[*index_of(id)];
  };
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const std::string producer = producer_of(i);
    const Shape& in = shape_of(producer);
    try {
      shapes.push_back(infer_output_shape(n.spec, in));
    } catch (const DimensionError& e) {
      throw DimensionError(n.id, "inconsistent edge '" + producer + "' -> '" + n.id +
                                     "': " + e.what());
    }
    if (std::holds_alternative<ResidualAddSpec>(n.spec)) {
      const std::string source = *residual_source(n.id);
      const Shape& skip = shape_of(source);
      if (skip != in) {
        throw DimensionError(n.id, "inconsistent residual edge '" + source + "' -> '" + n.id +
                                       "': " + to_string(skip) + " vs " + to_string(in));
      }
    }
  }
  return shapes;
}

}  // namespace vsrcost
