#include "vsrcost/graph_io.h"

#include <nlohmann/json.hpp>

#include <set>
#include <utility>

#include "file_util.h"
#include "vsrcost/errors.h"

namespace vsrcost {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json node_to_json(const Node& node) {
  json j;
  j["id"] = node.id;
  j["kind"] = std::string(kind_name(node.spec));
  std::visit(
      Overloaded{
          [&](const Conv2dSpec& s) {
            j["in_channels"] = s.in_channels;
            j["out_channels"] = s.out_channels;
            j["kernel"] = s.kernel;
            j["stride"] = s.stride;
            j["padding"] = to_string(s.padding);
          },
          [&](const Conv3dSpec& s) {
            j["in_channels"] = s.in_channels;
            j["out_channels"] = s.out_channels;
            j["kernel"] = s.kernel;
            j["temporal_kernel"] = s.temporal_kernel;
            j["stride"] = s.stride;
            j["temporal_stride"] = s.temporal_stride;
            j["padding"] = to_string(s.padding);
          },
          [&](const DsConv2dSpec& s) {
            j["in_channels"] = s.in_channels;
            j["out_channels"] = s.out_channels;
            j["kernel"] = s.kernel;
            j["stride"] = s.stride;
            j["padding"] = to_string(s.padding);
          },
          [&](const DsConv3dSpec& s) {
            j["in_channels"] = s.in_channels;
            j["out_channels"] = s.out_channels;
            j["kernel"] = s.kernel;
            j["temporal_kernel"] = s.temporal_kernel;
            j["stride"] = s.stride;
            j["temporal_stride"] = s.temporal_stride;
            j["padding"] = to_string(s.padding);
            j["pointwise_mode"] = to_string(s.pointwise_mode);
          },
          [&](const TemporalConv1dSpec& s) {
            j["in_channels"] = s.in_channels;
            j["out_channels"] = s.out_channels;
            j["kernel"] = s.kernel;
            j["stride"] = s.stride;
            j["padding"] = to_string(s.padding);
          },
          [&](const FullyConnectedSpec& s) {
            j["in_features"] = s.in_features;
            j["out_features"] = s.out_features;
          },
          [&](const MaxPoolSpec& s) {
            j["window"] = s.window;
            j["stride"] = s.stride;
          },
          [&](const BatchNormSpec& s) {
            j["channels"] = s.channels;
            j["eps"] = s.eps;
          },
          [&](const GlobalAvgPoolSpec& s) { j["axes"] = to_string(s.axes); },
          [](const auto&) {},
      },
      node.spec);
  if (node.input) j["input"] = *node.input;
  return j;
}

// Reads fields off one node object, remembering which keys were consumed so
// that leftovers can be reported.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string position) : obj_(obj), position_(std::move(position)) {
    used_.insert("id");
    used_.insert("kind");
    used_.insert("input");
  }

  std::int64_t integer(const char* key) {
    used_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) throw SchemaError(position_ + "." + key, "missing required field");
    return as_integer(*it, key);
  }

  std::int64_t integer(const char* key, std::int64_t fallback) {
    used_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? fallback : as_integer(*it, key);
  }

  double number(const char* key, double fallback) {
    used_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return fallback;
    if (!it->is_number()) throw SchemaError(position_ + "." + key, "expected a number");
    return it->get<double>();
  }

  std::string text(const char* key, const char* fallback) {
    used_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return fallback;
    if (!it->is_string()) throw SchemaError(position_ + "." + key, "expected a string");
    return it->get<std::string>();
  }

  Padding padding() {
    const auto s = text("padding", "same");
    if (s == "same") return Padding::same;
    if (s == "valid") return Padding::valid;
    throw SchemaError(position_ + ".padding", "unknown padding '" + s + "'");
  }

  void reject_unknown() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) throw SchemaError(position_ + "." + it.key(), "unknown field");
    }
  }

  const std::string& position() const { return position_; }

 private:
  std::int64_t as_integer(const json& v, const char* key) const {
    if (!v.is_number_integer()) throw SchemaError(position_ + "." + key, "expected an integer");
    return v.get<std::int64_t>();
  }

  const json& obj_;
  std::string position_;
  std::set<std::string> used_;
};

LayerSpec spec_from_json(const json& j, const std::string& kind, const std::string& position) {
  auto spec = spec_for_kind(kind);
  if (!spec) throw SchemaError(position, "unknown layer kind '" + kind + "'");
  FieldReader r(j, position);
  std::visit(
      Overloaded{
          [&](Conv2dSpec& s) {
            s.in_channels = r.integer("in_channels");
            s.out_channels = r.integer("out_channels");
            s.kernel = r.integer("kernel");
            s.stride = r.integer("stride", 1);
            s.padding = r.padding();
          },
          [&](Conv3dSpec& s) {
            s.in_channels = r.integer("in_channels");
            s.out_channels = r.integer("out_channels");
            s.kernel = r.integer("kernel");
            s.temporal_kernel = r.integer("temporal_kernel");
            s.stride = r.integer("stride", 1);
            s.temporal_stride = r.integer("temporal_stride", 1);
            s.padding = r.padding();
          },
          [&](DsConv2dSpec& s) {
            s.in_channels = r.integer("in_channels");
            s.out_channels = r.integer("out_channels");
            s.kernel = r.integer("kernel");
            s.stride = r.integer("stride", 1);
            s.padding = r.padding();
          },
          [&](DsConv3dSpec& s) {
            s.in_channels = r.integer("in_channels");
            s.out_channels = r.integer("out_channels");
            s.kernel = r.integer("kernel");
            s.temporal_kernel = r.integer("temporal_kernel");
            s.stride = r.integer("stride", 1);
            s.temporal_stride = r.integer("temporal_stride", 1);
            s.padding = r.padding();
            const auto mode = r.text("pointwise_mode", "partial");
            if (mode == "partial") {
              s.pointwise_mode = PointwiseMode::partial;
            } else if (mode == "full") {
              s.pointwise_mode = PointwiseMode::full;
            } else {
              throw SchemaError(position + ".pointwise_mode", "unknown pointwise mode '" + mode + "'");
            }
          },
          [&](TemporalConv1dSpec& s) {
            s.in_channels = r.integer("in_channels");
            s.out_channels = r.integer("out_channels");
            s.kernel = r.integer("kernel");
            s.stride = r.integer("stride", 1);
            s.padding = r.padding();
          },
          [&](FullyConnectedSpec& s) {
            s.in_features = r.integer("in_features");
            s.out_features = r.integer("out_features");
          },
          [&](MaxPoolSpec& s) {
            s.window = r.integer("window");
            s.stride = r.integer("stride");
          },
          [&](BatchNormSpec& s) {
            s.channels = r.integer("channels");
            s.eps = static_cast<float>(r.number("eps", 1e-5));
          },
          [&](GlobalAvgPoolSpec& s) {
            const auto axes = r.text("axes", "spatial");
            if (axes == "spatial") {
              s.axes = PoolAxes::spatial;
            } else if (axes == "temporal") {
              s.axes = PoolAxes::temporal;
            } else {
              throw SchemaError(position + ".axes", "unknown pooling axes '" + axes + "'");
            }
          },
          [](auto&) {},
      },
      *spec);
  r.reject_unknown();
  return *spec;
}

const json& require(const json& obj, const char* key, const std::string& position) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(position + key, "missing required field");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& position) {
  const json& v = require(obj, key, position);
  if (!v.is_string()) throw SchemaError(position + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

std::string serialize_graph(const LayerGraph& graph) {
  json j;
  j["format"] = kGraphFormat;
  j["schema_version"] = kGraphSchemaVersion;
  j["name"] = graph.name;
  j["channel_plan"] = graph.channel_plan;
  j["input_shape"] = graph.input_shape;
  j["nodes"] = json::array();
  for (const auto& n : graph.nodes()) j["nodes"].push_back(node_to_json(n));
  j["residual_edges"] = json::array();
  for (const auto& e : graph.residuals()) {
    j["residual_edges"].push_back({{"source", e.source}, {"destination", e.destination}});
  }
  return j.dump(2) + "\n";
}

LayerGraph parse_graph(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("byte " + std::to_string(e.byte), std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw SchemaError("$", "top-level value must be an object");

  const json& version = require(root, "schema_version", "$.");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kGraphSchemaVersion) {
    throw SchemaError("$.schema_version", "unsupported schema version " + version.dump() +
                                              " (expected " + std::to_string(kGraphSchemaVersion) + ")");
  }
  if (auto it = root.find("format"); it != root.end() && *it != kGraphFormat) {
    throw SchemaError("$.format", "unexpected format " + it->dump());
  }

  LayerGraph graph;
  if (auto it = root.find("name"); it != root.end() && it->is_string()) graph.name = *it;
  if (auto it = root.find("channel_plan"); it != root.end() && it->is_string()) {
    graph.channel_plan = *it;
  }
  if (auto it = root.find("input_shape"); it != root.end()) {
    if (!it->is_array()) throw SchemaError("$.input_shape", "expected an array of extents");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& v = (*it)[i];
      if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
        throw SchemaError("$.input_shape[" + std::to_string(i) + "]", "expected a positive integer");
      }
      graph.input_shape.push_back(v.get<std::int64_t>());
    }
  }

  const json& nodes = require(root, "nodes", "$.");
  if (!nodes.is_array()) throw SchemaError("$.nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string at = "$.nodes[" + std::to_string(i) + "]";
    const json& n = nodes[i];
    if (!n.is_object()) throw SchemaError(at, "expected an object");
    const std::string id = require_string(n, "id", at + ".");
    const std::string kind = require_string(n, "kind", at + ".");
    const std::string position = at + " (id '" + id + "')";
    LayerSpec spec = spec_from_json(n, kind, position);
    std::optional<std::string> input;
    if (auto it = n.find("input"); it != n.end()) {
      if (!it->is_string()) throw SchemaError(position + ".input", "expected a string");
      input = it->get<std::string>();
    }
    graph.add(id, std::move(spec), std::move(input));
  }

  if (auto it = root.find("residual_edges"); it != root.end()) {
    if (!it->is_array()) throw SchemaError("$.residual_edges", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string at = "$.residual_edges[" + std::to_string(i) + "].";
      const json& e = (*it)[i];
      if (!e.is_object()) throw SchemaError(at, "expected an object");
      graph.add_residual(require_string(e, "source", at), require_string(e, "destination", at));
    }
  }
  graph.validate();
  return graph;
}

void save_graph(const LayerGraph& graph, const std::filesystem::path& path) {
  const std::string text = serialize_graph(graph);
  detail::write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

LayerGraph load_graph(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  return parse_graph(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace vsrcost
