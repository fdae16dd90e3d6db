#pragma once

// Reference kernels. Every convolution is a direct cross-correlation over an
// explicitly zero-padded copy of the input; nothing here is tuned for speed.
//
// Each costed kernel takes an optional CounterLedger. When it is non-null the
// kernel tallies its own loop iterations into it; the numeric result is the
// same either way.

#include <cstdint>

#include "vsrcost/ledger.h"
#include "vsrcost/tensor.h"

namespace vsrcost {

enum class Padding { same, valid };

// partial: pointwise kernel spans T frames (T x 1 x 1).
// full: pointwise kernel is 1 x 1 x 1.
enum class PointwiseMode { partial, full };

enum class PoolAxes { spatial, temporal };

struct ConvParams {
  std::int64_t stride = 1;           // spatial (or the only axis for 1-D)
  std::int64_t temporal_stride = 1;  // 3-D kernels only
  Padding padding = Padding::same;
};

// Output extent along one axis; 0 when a valid window does not fit.
std::int64_t conv_output_extent(std::int64_t in, std::int64_t kernel,
                                std::int64_t stride, Padding padding);

// input: Ci x H x W, or Ci x L x H x W with frames treated as a batch.
// weights: Co x Ci x K x K.
Tensor conv2d(const Tensor& input, const Tensor& weights, ConvParams params = {},
              CounterLedger* ledger = nullptr);

// input: Ci x L x H x W. weights: Co x Ci x T x K x K.
Tensor conv3d(const Tensor& input, const Tensor& weights, ConvParams params = {},
              CounterLedger* ledger = nullptr);

// Grouped (groups == Ci) K x K stage followed by a 1 x 1 channel mix.
// depthwise: Ci x K x K. pointwise: Co x Ci x 1 x 1.
// Accepts the same input layouts as conv2d.
Tensor ds_conv2d(const Tensor& input, const Tensor& depthwise, const Tensor& pointwise,
                 ConvParams params = {}, CounterLedger* ledger = nullptr);

// depthwise: Ci x T x K x K. pointwise: Co x Ci x Tp x 1 x 1 with Tp == T in
// partial mode and Tp == 1 in full mode. Strides apply to the depthwise
// stage; the pointwise stage always has stride 1 and shares the padding mode.
Tensor ds_conv3d(const Tensor& input, const Tensor& depthwise, const Tensor& pointwise,
                 ConvParams params = {}, PointwiseMode mode = PointwiseMode::partial,
                 CounterLedger* ledger = nullptr);

// input: C x L. weights: Co x Ci x k. Uses params.stride along time.
Tensor temporal_conv1d(const Tensor& input, const Tensor& weights, ConvParams params = {},
                       CounterLedger* ledger = nullptr);

// input: [I]. weights: Q x I. No bias.
Tensor fully_connected(const Tensor& input, const Tensor& weights,
                       CounterLedger* ledger = nullptr);

// Pools the last axis of a rank-1/2 tensor, or the last two axes otherwise.
// Windows that do not fit are dropped.
Tensor maxpool(const Tensor& input, std::int64_t window, std::int64_t stride);

Tensor relu(const Tensor& input);

// Per-channel (axis 0) normalization with running statistics.
Tensor batchnorm_inference(const Tensor& input, const Tensor& mean, const Tensor& var,
                           const Tensor& gamma, const Tensor& beta, float eps = 1e-5f);

// Along the last axis, stabilized by subtracting the maximum.
Tensor softmax(const Tensor& input);

Tensor residual_add(const Tensor& a, const Tensor& b);

// spatial: mean over the trailing H x W axes. temporal: mean over the
// trailing time axis of a C x L tensor.
Tensor global_avgpool(const Tensor& input, PoolAxes axes);

}  // namespace vsrcost
