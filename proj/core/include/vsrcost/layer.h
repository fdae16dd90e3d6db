#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "vsrcost/ops.h"
#include "vsrcost/tensor.h"

namespace vsrcost {

// One struct per layer kind. Zero-valued dimensions mean "not set" and are
// rejected by validate().

struct Conv2dSpec {
  std::int64_t in_channels = 0, out_channels = 0, kernel = 0;
  std::int64_t stride = 1;
  Padding padding = Padding::same;
  friend bool operator==(const Conv2dSpec&, const Conv2dSpec&) = default;
};

struct Conv3dSpec {
  std::int64_t in_channels = 0, out_channels = 0, kernel = 0, temporal_kernel = 0;
  std::int64_t stride = 1, temporal_stride = 1;
  Padding padding = Padding::same;
  friend bool operator==(const Conv3dSpec&, const Conv3dSpec&) = default;
};

struct DsConv2dSpec {
  std::int64_t in_channels = 0, out_channels = 0, kernel = 0;
  std::int64_t stride = 1;
  Padding padding = Padding::same;
  friend bool operator==(const DsConv2dSpec&, const DsConv2dSpec&) = default;
};

struct DsConv3dSpec {
  std::int64_t in_channels = 0, out_channels = 0, kernel = 0, temporal_kernel = 0;
  std::int64_t stride = 1, temporal_stride = 1;
  Padding padding = Padding::same;
  PointwiseMode pointwise_mode = PointwiseMode::partial;

  std::int64_t pointwise_temporal_kernel() const {
    return pointwise_mode == PointwiseMode::partial ? temporal_kernel : 1;
  }
  friend bool operator==(const DsConv3dSpec&, const DsConv3dSpec&) = default;
};

struct TemporalConv1dSpec {
  std::int64_t in_channels = 0, out_channels = 0, kernel = 0;
  std::int64_t stride = 1;
  Padding padding = Padding::same;
  friend bool operator==(const TemporalConv1dSpec&, const TemporalConv1dSpec&) = default;
};

struct FullyConnectedSpec {
  std::int64_t in_features = 0, out_features = 0;
  friend bool operator==(const FullyConnectedSpec&, const FullyConnectedSpec&) = default;
};

struct MaxPoolSpec {
  std::int64_t window = 0, stride = 0;
  friend bool operator==(const MaxPoolSpec&, const MaxPoolSpec&) = default;
};

struct ReluSpec {
  friend bool operator==(const ReluSpec&, const ReluSpec&) = default;
};

struct BatchNormSpec {
  std::int64_t channels = 0;
  float eps = 1e-5f;
  friend bool operator==(const BatchNormSpec&, const BatchNormSpec&) = default;
};

struct SoftmaxSpec {
  friend bool operator==(const SoftmaxSpec&, const SoftmaxSpec&) = default;
};

struct ResidualAddSpec {
  friend bool operator==(const ResidualAddSpec&, const ResidualAddSpec&) = default;
};

struct GlobalAvgPoolSpec {
  PoolAxes axes = PoolAxes::spatial;
  friend bool operator==(const GlobalAvgPoolSpec&, const GlobalAvgPoolSpec&) = default;
};

using LayerSpec =
    std::variant<Conv2dSpec, Conv3dSpec, DsConv2dSpec, DsConv3dSpec, TemporalConv1dSpec,
                 FullyConnectedSpec, MaxPoolSpec, ReluSpec, BatchNormSpec, SoftmaxSpec,
                 ResidualAddSpec, GlobalAvgPoolSpec>;

// Stable tag used in graph files ("conv2d", "ds_conv3d", "fc", ...).
std::string_view kind_name(const LayerSpec& spec);

// Default-constructed spec for a tag, or nullopt if the tag is unknown.
std::optional<LayerSpec> spec_for_kind(std::string_view kind);

// True for the kinds that carry weights and have nonzero cost.
bool is_costed(const LayerSpec& spec);

// Throws ValidationError naming the first missing or non-positive field.
void validate(const LayerSpec& spec);

// Output shape for a given input shape. Throws DimensionError when the input
// is incompatible with the layer. Zero extents propagate (valid windows that
// do not fit produce a zero extent rather than an error).
Shape infer_output_shape(const LayerSpec& spec, const Shape& input);

std::string_view to_string(Padding padding);
std::string_view to_string(PointwiseMode mode);
std::string_view to_string(PoolAxes axes);

}  // namespace vsrcost
