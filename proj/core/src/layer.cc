#include "vsrcost/layer.h"

#include <array>
#include <string>
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

constexpr std::array<std::string_view, std::variant_size_v<LayerSpec>> kKindNames = {
    "conv2d", "conv3d",  "ds_conv2d", "ds_conv3d", "temporal_conv1d", "fc",
    "maxpool", "relu",   "batchnorm", "softmax",   "residual_add",    "global_avgpool"};

template <std::size_t... I>
std::optional<LayerSpec> make_by_index(std::size_t index, std::index_sequence<I...>) {
  std::optional<LayerSpec> out;
  ((index == I ? (out.emplace(std::in_place_index<I>), 0) : 0), ...);
  return out;
}

void require_positive(std::string_view kind, const char* field, std::int64_t value) {
  if (value <= 0) {
    throw ValidationError(std::string(kind) + ": missing dimension '" + field +
                          "' (got " + std::to_string(value) + ")");
  }
}

void require_rank(std::string_view kind, const Shape& input,
                  std::initializer_list<std::size_t> ranks) {
  for (auto r : ranks)
    if (input.size() == r) return;
  throw DimensionError(std::string(kind), "input shape " + to_string(input) +
                                              " has unsupported rank " +
                                              std::to_string(input.size()));
}

void require_channels(std::string_view kind, std::int64_t expected, std::int64_t actual) {
  if (expected != actual) throw DimensionError(std::string(kind), "in_channels", expected, actual);
}

// C x H x W or C x L x H x W, with frames as a batch axis.
Shape conv2d_like(std::string_view kind, const Shape& in, std::int64_t ci, std::int64_t co,
                  std::int64_t k, std::int64_t stride, Padding padding) {
  require_rank(kind, in, {3, 4});
  require_channels(kind, ci, in[0]);
  Shape out = in;
  out[0] = co;
  out[out.size() - 2] = conv_output_extent(in[in.size() - 2], k, stride, padding);
  out[out.size() - 1] = conv_output_extent(in[in.size() - 1], k, stride, padding);
  return out;
}

Shape conv3d_like(std::string_view kind, const Shape& in, std::int64_t ci, std::int64_t co,
                  std::int64_t k, std::int64_t t, std::int64_t stride, std::int64_t tstride,
                  Padding padding) {
  require_rank(kind, in, {4});
  require_channels(kind, ci, in[0]);
  return {co, conv_output_extent(in[1], t, tstride, padding),
          conv_output_extent(in[2], k, stride, padding),
          conv_output_extent(in[3], k, stride, padding)};
}

}  // namespace

std::string_view kind_name(const LayerSpec& spec) { return kKindNames[spec.index()]; }

std::optional<LayerSpec> spec_for_kind(std::string_view kind) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == kind) {
      return make_by_index(i, std::make_index_sequence<std::variant_size_v<LayerSpec>>{});
    }
  }
  return std::nullopt;
}

bool is_costed(const LayerSpec& spec) {
  return std::holds_alternative<Conv2dSpec>(spec) || std::holds_alternative<Conv3dSpec>(spec) ||
         std::holds_alternative<DsConv2dSpec>(spec) || std::holds_alternative<DsConv3dSpec>(spec) ||
         std::holds_alternative<TemporalConv1dSpec>(spec) ||
         std::holds_alternative<FullyConnectedSpec>(spec);
}

void validate(const LayerSpec& spec) {
  const auto kind = kind_name(spec);
  std::visit(
      Overloaded{
          [&](const Conv2dSpec& s) {
            require_positive(kind, "in_channels", s.in_channels);
            require_positive(kind, "out_channels", s.out_channels);
            require_positive(kind, "kernel", s.kernel);
            require_positive(kind, "stride", s.stride);
          },
          [&](const Conv3dSpec& s) {
            require_positive(kind, "in_channels", s.in_channels);
            require_positive(kind, "out_channels", s.out_channels);
            require_positive(kind, "kernel", s.kernel);
            require_positive(kind, "temporal_kernel", s.temporal_kernel);
            require_positive(kind, "stride", s.stride);
            require_positive(kind, "temporal_stride", s.temporal_stride);
          },
          [&](const DsConv2dSpec& s) {
            require_positive(kind, "in_channels", s.in_channels);
            require_positive(kind, "out_channels", s.out_channels);
            require_positive(kind, "kernel", s.kernel);
            require_positive(kind, "stride", s.stride);
          },
          [&](const DsConv3dSpec& s) {
            require_positive(kind, "in_channels", s.in_channels);
            require_positive(kind, "out_channels", s.out_channels);
            require_positive(kind, "kernel", s.kernel);
            require_positive(kind, "temporal_kernel", s.temporal_kernel);
            require_positive(kind, "stride", s.stride);
            require_positive(kind, "temporal_stride", s.temporal_stride);
          },
          [&](const TemporalConv1dSpec& s) {
            require_positive(kind, "in_channels", s.in_channels);
            require_positive(kind, "out_channels", s.out_channels);
            require_positive(kind, "kernel", s.kernel);
            require_positive(kind, "stride", s.stride);
          },
          [&](const FullyConnectedSpec& s) {
            require_positive(kind, "in_features", s.in_features);
            require_positive(kind, "out_features", s.out_features);
          },
          [&](const MaxPoolSpec& s) {
            require_positive(kind, "window", s.window);
            require_positive(kind, "stride", s.stride);
          },
          [&](const BatchNormSpec& s) {
            require_positive(kind, "channels", s.channels);
            if (!(s.eps > 0.0f)) throw ValidationError("batchnorm: eps must be positive");
          },
          [](const auto&) {},
      },
      spec);
}

Shape infer_output_shape(const LayerSpec& spec, const Shape& in) {
  validate(spec);
  const auto kind = kind_name(spec);
  return std::visit(
      Overloaded{
          [&](const Conv2dSpec& s) {
            return conv2d_like(kind, in, s.in_channels, s.out_channels, s.kernel, s.stride,
                               s.padding);
          },
          [&](const DsConv2dSpec& s) {
            return conv2d_like(kind, in, s.in_channels, s.out_channels, s.kernel, s.stride,
                               s.padding);
          },
          [&](const Conv3dSpec& s) {
            return conv3d_like(kind, in, s.in_channels, s.out_channels, s.kernel,
                               s.temporal_kernel, s.stride, s.temporal_stride, s.padding);
          },
          [&](const DsConv3dSpec& s) {
            Shape out = conv3d_like(kind, in, s.in_channels, s.out_channels, s.kernel,
                                    s.temporal_kernel, s.stride, s.temporal_stride, s.padding);
            out[1] = conv_output_extent(out[1], s.pointwise_temporal_kernel(), 1, s.padding);
            return out;
          },
          [&](const TemporalConv1dSpec& s) {
            require_rank(kind, in, {2});
            require_channels(kind, s.in_channels, in[0]);
            return Shape{s.out_channels, conv_output_extent(in[1], s.kernel, s.stride, s.padding)};
          },
          [&](const FullyConnectedSpec& s) {
            require_rank(kind, in, {1});
            if (in[0] != s.in_features) {
              throw DimensionError(std::string(kind), "in_features", s.in_features, in[0]);
            }
            return Shape{s.out_features};
          },
          [&](const MaxPoolSpec& s) {
            if (in.empty()) throw DimensionError(std::string(kind), "input must have rank >= 1");
            Shape out = in;
            out.back() = conv_output_extent(in.back(), s.window, s.stride, Padding::valid);
            if (in.size() >= 3) {
              out[out.size() - 2] =
                  conv_output_extent(in[in.size() - 2], s.window, s.stride, Padding::valid);
            }
            return out;
          },
          [&](const BatchNormSpec& s) {
            if (in.empty()) throw DimensionError(std::string(kind), "input must have rank >= 1");
            require_channels(kind, s.channels, in[0]);
            return in;
          },
          [&](const GlobalAvgPoolSpec& s) {
            if (s.axes == PoolAxes::spatial) {
              require_rank(kind, in, {3, 4});
              return Shape(in.begin(), in.end() - 2);
            }
            require_rank(kind, in, {2});
            return Shape{in[0]};
          },
          [&](const auto&) { return in; },
      },
      spec);
}

std::string_view to_string(Padding padding) {
  return padding == Padding::same ? "same" : "valid";
}

std::string_view to_string(PointwiseMode mode) {
  return mode == PointwiseMode::partial ? "partial" : "full";
}

std::string_view to_string(PoolAxes axes) {
  return axes == PoolAxes::spatial ? "spatial" : "temporal";
}

}  // namespace vsrcost
