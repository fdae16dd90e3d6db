#include "vsrcost/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "vsrcost/errors.h"

namespace vsrcost {

namespace {

// A convolution over a C x L x H x W input with a Co x (C / groups) x T x Kh x Kw
// kernel. Every public convolution reduces to one or two of these.
struct ConvGeometry {
  std::int64_t channels, frames, height, width;
  std::int64_t out_channels, kt, kh, kw;
  std::int64_t groups = 1;
  std::int64_t st = 1, sh = 1, sw = 1;
  Padding padding = Padding::same;
};

struct AxisPlan {
  std::int64_t out = 0;
  std::int64_t pad_before = 0;
  std::int64_t padded = 0;
};

AxisPlan plan_axis(const char* op, const char* axis, std::int64_t in, std::int64_t k,
                   std::int64_t stride, Padding padding) {
  AxisPlan plan;
  plan.out = conv_output_extent(in, k, stride, padding);
  if (plan.out <= 0) {
    throw DimensionError(op, std::string(axis) + " extent " + std::to_string(in) +
                                 " is smaller than kernel extent " + std::to_string(k));
  }
  const std::int64_t needed = (plan.out - 1) * stride + k;
  const std::int64_t total_pad = std::max<std::int64_t>(needed - in, 0);
  plan.pad_before = padding == Padding::same ? total_pad / 2 : 0;
  plan.padded = std::max(needed, in + (padding == Padding::same ? total_pad : 0));
  return plan;
}

template <bool kCount>
Tensor conv_core(const char* op, std::span<const float> input, std::span<const float> weights,
                 const ConvGeometry& g, Shape out_shape, CounterLedger* ledger) {
  const AxisPlan pt = plan_axis(op, "time", g.frames, g.kt, g.st, g.padding);
  const AxisPlan ph = plan_axis(op, "height", g.height, g.kh, g.sh, g.padding);
  const AxisPlan pw = plan_axis(op, "width", g.width, g.kw, g.sw, g.padding);

  // Zero-padded copy of the input.
  const std::int64_t lp = pt.padded, hp = ph.padded, wp = pw.padded;
  std::vector<float> padded(static_cast<std::size_t>(g.channels * lp * hp * wp), 0.0f);
  for (std::int64_t c = 0; c < g.channels; ++c)
    for (std::int64_t l = 0; l < g.frames; ++l)
      for (std::int64_t h = 0; h < g.height; ++h) {
        const float* src = input.data() + ((c * g.frames + l) * g.height + h) * g.width;
        float* dst = padded.data() +
                     ((c * lp + l + pt.pad_before) * hp + h + ph.pad_before) * wp + pw.pad_before;
        std::copy(src, src + g.width, dst);
      }

  const std::int64_t cin_per_group = g.channels / g.groups;
  const std::int64_t cout_per_group = g.out_channels / g.groups;
  const std::int64_t kvol = cin_per_group * g.kt * g.kh * g.kw;

  Tensor output(std::move(out_shape));
  float* out = output.data().data();
  std::uint64_t macs = 0;

  for (std::int64_t co = 0; co < g.out_channels; ++co) {
    const std::int64_t group = co / cout_per_group;
    const float* wco = weights.data() + co * kvol;
    for (std::int64_t ol = 0; ol < pt.out; ++ol)
      for (std::int64_t oh = 0; oh < ph.out; ++oh)
        for (std::int64_t ow = 0; ow < pw.out; ++ow) {
          float acc = 0.0f;
          const float* w = wco;
          for (std::int64_t ci = 0; ci < cin_per_group; ++ci) {
            const std::int64_t c = group * cin_per_group + ci;
            for (std::int64_t t = 0; t < g.kt; ++t)
              for (std::int64_t y = 0; y < g.kh; ++y) {
                const float* x = padded.data() +
                                 ((c * lp + ol * g.st + t) * hp + oh * g.sh + y) * wp + ow * g.sw;
                for (std::int64_t xk = 0; xk < g.kw; ++xk) {
                  acc += *w++ * x[xk];
                  if constexpr (kCount) ++macs;
                }
              }
          }
          *out++ = acc;
        }
  }

  if constexpr (kCount) {
    ledger->multiplies += macs;
    ledger->adds += macs;
    ledger->activation_reads += macs;
    ledger->param_reads += weights.size();
    ledger->output_writes += static_cast<std::uint64_t>(output.size());
  }
  return output;
}

Tensor run_conv(const char* op, std::span<const float> input, std::span<const float> weights,
                const ConvGeometry& g, Shape out_shape, CounterLedger* ledger) {
  if (ledger) return conv_core<true>(op, input, weights, g, std::move(out_shape), ledger);
  return conv_core<false>(op, input, weights, g, std::move(out_shape), nullptr);
}

void require_rank(const char* op, const char* operand, const Tensor& t,
                  std::initializer_list<std::size_t> ranks) {
  for (auto r : ranks)
    if (t.rank() == r) return;
  std::string allowed;
  for (auto r : ranks) allowed += (allowed.empty() ? "" : " or ") + std::to_string(r);
  throw DimensionError(op, std::string(operand) + " must have rank " + allowed + ", got shape " +
                               to_string(t.shape()));
}

void require_extent(const char* op, const char* axis, std::int64_t expected,
                    std::int64_t actual) {
  if (expected != actual) throw DimensionError(op, axis, expected, actual);
}

void require_positive_stride(const char* op, const ConvParams& p) {
  if (p.stride <= 0 || p.temporal_stride <= 0) {
    throw ValidationError(std::string(op) + ": strides must be positive");
  }
}

// Views a conv2d-style input (C x H x W or C x L x H x W) as C x L x H x W.
struct FrameView {
  std::int64_t channels, frames, height, width;
  bool has_frames;
};

FrameView frame_view(const Tensor& input) {
  if (input.rank() == 3) return {input.dim(0), 1, input.dim(1), input.dim(2), false};
  return {input.dim(0), input.dim(1), input.dim(2), input.dim(3), true};
}

Shape frame_output_shape(const FrameView& v, std::int64_t co, std::int64_t h, std::int64_t w) {
  if (v.has_frames) return {co, v.frames, h, w};
  return {co, h, w};
}

}  // namespace

std::int64_t conv_output_extent(std::int64_t in, std::int64_t kernel, std::int64_t stride,
                                Padding padding) {
  if (in <= 0 || kernel <= 0 || stride <= 0) return 0;
  if (padding == Padding::same) return (in + stride - 1) / stride;
  if (in < kernel) return 0;
  return (in - kernel) / stride + 1;
}

Tensor conv2d(const Tensor& input, const Tensor& weights, ConvParams params,
              CounterLedger* ledger) {
  constexpr const char* op = "conv2d";
  require_positive_stride(op, params);
  require_rank(op, "input", input, {3, 4});
  require_rank(op, "weights", weights, {4});
  const FrameView v = frame_view(input);
  require_extent(op, "in_channels", weights.dim(1), v.channels);
  require_extent(op, "kernel_width", weights.dim(2), weights.dim(3));

  ConvGeometry g{v.channels, v.frames, v.height, v.width, weights.dim(0), 1,
                 weights.dim(2), weights.dim(3)};
  g.sh = g.sw = params.stride;
  g.padding = params.padding;
  const auto ho = conv_output_extent(v.height, g.kh, g.sh, g.padding);
  const auto wo = conv_output_extent(v.width, g.kw, g.sw, g.padding);
  return run_conv(op, input.data(), weights.data(), g,
                  frame_output_shape(v, g.out_channels, std::max<std::int64_t>(ho, 1),
                                     std::max<std::int64_t>(wo, 1)),
                  ledger);
}

Tensor conv3d(const Tensor& input, const Tensor& weights, ConvParams params,
              CounterLedger* ledger) {
  constexpr const char* op = "conv3d";
  require_positive_stride(op, params);
  require_rank(op, "input", input, {4});
  require_rank(op, "weights", weights, {5});
  require_extent(op, "in_channels", weights.dim(1), input.dim(0));
  require_extent(op, "kernel_width", weights.dim(3), weights.dim(4));

  ConvGeometry g{input.dim(0), input.dim(1), input.dim(2), input.dim(3),
                 weights.dim(0), weights.dim(2), weights.dim(3), weights.dim(4)};
  g.st = params.temporal_stride;
  g.sh = g.sw = params.stride;
  g.padding = params.padding;
  const auto lo = conv_output_extent(g.frames, g.kt, g.st, g.padding);
  const auto ho = conv_output_extent(g.height, g.kh, g.sh, g.padding);
  const auto wo = conv_output_extent(g.width, g.kw, g.sw, g.padding);
  return run_conv(op, input.data(), weights.data(), g,
                  {g.out_channels, std::max<std::int64_t>(lo, 1), std::max<std::int64_t>(ho, 1),
                   std::max<std::int64_t>(wo, 1)},
                  ledger);
}

namespace {

// Final output is produced by the pointwise stage; the depthwise
// intermediate is handed over without being counted as a write.
void merge_stage_ledgers(CounterLedger* ledger, const CounterLedger& dw,
                         const CounterLedger& pw) {
  if (!ledger) return;
  CounterLedger merged = dw + pw;
  merged.output_writes = pw.output_writes;
  *ledger += merged;
}

}  // namespace

Tensor ds_conv2d(const Tensor& input, const Tensor& depthwise, const Tensor& pointwise,
                 ConvParams params, CounterLedger* ledger) {
  constexpr const char* op = "ds_conv2d";
  require_positive_stride(op, params);
  require_rank(op, "input", input, {3, 4});
  require_rank(op, "depthwise weights", depthwise, {3});
  require_rank(op, "pointwise weights", pointwise, {4});
  const FrameView v = frame_view(input);
  require_extent(op, "depthwise_channels", depthwise.dim(0), v.channels);
  require_extent(op, "kernel_width", depthwise.dim(1), depthwise.dim(2));
  require_extent(op, "pointwise_in_channels", pointwise.dim(1), v.channels);
  require_extent(op, "pointwise_kernel_height", 1, pointwise.dim(2));
  require_extent(op, "pointwise_kernel_width", 1, pointwise.dim(3));

  ConvGeometry dw{v.channels, v.frames, v.height, v.width, v.channels, 1,
                  depthwise.dim(1), depthwise.dim(2)};
  dw.groups = v.channels;
  dw.sh = dw.sw = params.stride;
  dw.padding = params.padding;
  const auto ho = std::max<std::int64_t>(conv_output_extent(v.height, dw.kh, dw.sh, dw.padding), 1);
  const auto wo = std::max<std::int64_t>(conv_output_extent(v.width, dw.kw, dw.sw, dw.padding), 1);

  CounterLedger dw_ledger, pw_ledger;
  Tensor mid = run_conv(op, input.data(), depthwise.data(), dw,
                        frame_output_shape(v, v.channels, ho, wo), ledger ? &dw_ledger : nullptr);

  ConvGeometry pg{v.channels, v.frames, ho, wo, pointwise.dim(0), 1, 1, 1};
  pg.padding = params.padding;
  Tensor out = run_conv(op, mid.data(), pointwise.data(), pg,
                        frame_output_shape(v, pointwise.dim(0), ho, wo),
                        ledger ? &pw_ledger : nullptr);
  merge_stage_ledgers(ledger, dw_ledger, pw_ledger);
  return out;
}

Tensor ds_conv3d(const Tensor& input, const Tensor& depthwise, const Tensor& pointwise,
                 ConvParams params, PointwiseMode mode, CounterLedger* ledger) {
  constexpr const char* op = "ds_conv3d";
  require_positive_stride(op, params);
  require_rank(op, "input", input, {4});
  require_rank(op, "depthwise weights", depthwise, {4});
  require_rank(op, "pointwise weights", pointwise, {5});
  const std::int64_t ci = input.dim(0);
  require_extent(op, "depthwise_channels", depthwise.dim(0), ci);
  require_extent(op, "kernel_width", depthwise.dim(2), depthwise.dim(3));
  require_extent(op, "pointwise_in_channels", pointwise.dim(1), ci);
  const std::int64_t expected_tp = mode == PointwiseMode::partial ? depthwise.dim(1) : 1;
  require_extent(op, "pointwise_temporal_extent", expected_tp, pointwise.dim(2));
  require_extent(op, "pointwise_kernel_height", 1, pointwise.dim(3));
  require_extent(op, "pointwise_kernel_width", 1, pointwise.dim(4));

  ConvGeometry dw{ci, input.dim(1), input.dim(2), input.dim(3), ci,
                  depthwise.dim(1), depthwise.dim(2), depthwise.dim(3)};
  dw.groups = ci;
  dw.st = params.temporal_stride;
  dw.sh = dw.sw = params.stride;
  dw.padding = params.padding;
  const auto lo = std::max<std::int64_t>(conv_output_extent(dw.frames, dw.kt, dw.st, dw.padding), 1);
  const auto ho = std::max<std::int64_t>(conv_output_extent(dw.height, dw.kh, dw.sh, dw.padding), 1);
  const auto wo = std::max<std::int64_t>(conv_output_extent(dw.width, dw.kw, dw.sw, dw.padding), 1);

  CounterLedger dw_ledger, pw_ledger;
  Tensor mid = run_conv(op, input.data(), depthwise.data(), dw, {ci, lo, ho, wo},
                        ledger ? &dw_ledger : nullptr);

  ConvGeometry pg{ci, lo, ho, wo, pointwise.dim(0), pointwise.dim(2), 1, 1};
  pg.padding = params.padding;
  const auto lp = std::max<std::int64_t>(conv_output_extent(lo, pg.kt, 1, pg.padding), 1);
  Tensor out = run_conv(op, mid.data(), pointwise.data(), pg, {pointwise.dim(0), lp, ho, wo},
                        ledger ? &pw_ledger : nullptr);
  merge_stage_ledgers(ledger, dw_ledger, pw_ledger);
  return out;
}

Tensor temporal_conv1d(const Tensor& input, const Tensor& weights, ConvParams params,
                       CounterLedger* ledger) {
  constexpr const char* op = "temporal_conv1d";
  require_positive_stride(op, params);
  require_rank(op, "input", input, {2});
  require_rank(op, "weights", weights, {3});
  require_extent(op, "in_channels", weights.dim(1), input.dim(0));

  ConvGeometry g{input.dim(0), input.dim(1), 1, 1, weights.dim(0), weights.dim(2), 1, 1};
  g.st = params.stride;
  g.padding = params.padding;
  const auto lo = std::max<std::int64_t>(conv_output_extent(g.frames, g.kt, g.st, g.padding), 1);
  return run_conv(op, input.data(), weights.data(), g, {g.out_channels, lo}, ledger);
}

Tensor fully_connected(const Tensor& input, const Tensor& weights, CounterLedger* ledger) {
  constexpr const char* op = "fully_connected";
  require_rank(op, "input", input, {1});
  require_rank(op, "weights", weights, {2});
  const std::int64_t in = input.dim(0);
  const std::int64_t out_features = weights.dim(0);
  require_extent(op, "in_features", weights.dim(1), in);

  // Input-stationary: each input element is fetched once and applied to
  // every output row.
  std::vector<float> acc(static_cast<std::size_t>(out_features), 0.0f);
  const auto x = input.data();
  const auto w = weights.data();
  std::uint64_t macs = 0;
  for (std::int64_t i = 0; i < in; ++i) {
    const float xi = x[static_cast<std::size_t>(i)];
    for (std::int64_t q = 0; q < out_features; ++q) {
      acc[static_cast<std::size_t>(q)] += w[static_cast<std::size_t>(q * in + i)] * xi;
    }
    macs += static_cast<std::uint64_t>(out_features);
  }
  if (ledger) {
    ledger->multiplies += macs;
    ledger->adds += macs;
    ledger->param_reads += static_cast<std::uint64_t>(weights.size());
    ledger->activation_reads += static_cast<std::uint64_t>(in);
    ledger->output_writes += static_cast<std::uint64_t>(out_features);
  }
  return Tensor({out_features}, std::move(acc));
}

Tensor maxpool(const Tensor& input, std::int64_t window, std::int64_t stride) {
  constexpr const char* op = "maxpool";
  if (window <= 0 || stride <= 0) throw ValidationError("maxpool: window and stride must be positive");
  if (input.rank() == 0) throw DimensionError(op, "input must have rank >= 1");

  const bool two_axes = input.rank() >= 3;
  const std::int64_t w_in = input.dim(input.rank() - 1);
  const std::int64_t h_in = two_axes ? input.dim(input.rank() - 2) : 1;
  const std::int64_t wo = conv_output_extent(w_in, window, stride, Padding::valid);
  const std::int64_t ho = two_axes ? conv_output_extent(h_in, window, stride, Padding::valid) : 1;
  if (wo <= 0 || ho <= 0) {
    throw DimensionError(op, "pooled extent smaller than window " + std::to_string(window) +
                                 " for input " + to_string(input.shape()));
  }
  const std::int64_t outer = input.size() / (h_in * w_in);
  const std::int64_t kh = two_axes ? window : 1;
  const std::int64_t shh = two_axes ? stride : 1;

  Shape out_shape = input.shape();
  out_shape.back() = wo;
  if (two_axes) out_shape[out_shape.size() - 2] = ho;
  Tensor out(out_shape);
  const auto x = input.data();
  auto y = out.data();
  std::size_t k = 0;
  for (std::int64_t o = 0; o < outer; ++o) {
    const float* plane = x.data() + o * h_in * w_in;
    for (std::int64_t oh = 0; oh < ho; ++oh)
      for (std::int64_t ow = 0; ow < wo; ++ow) {
        float m = -std::numeric_limits<float>::infinity();
        for (std::int64_t dy = 0; dy < kh; ++dy)
          for (std::int64_t dx = 0; dx < window; ++dx)
            m = std::max(m, plane[(oh * shh + dy) * w_in + ow * stride + dx]);
        y[k++] = m;
      }
  }
  return out;
}

Tensor relu(const Tensor& input) {
  Tensor out = input;
  for (auto& v : out.data()) v = v > 0.0f ? v : 0.0f;
  return out;
}

Tensor batchnorm_inference(const Tensor& input, const Tensor& mean, const Tensor& var,
                           const Tensor& gamma, const Tensor& beta, float eps) {
  constexpr const char* op = "batchnorm";
  if (input.rank() == 0) throw DimensionError(op, "input must have rank >= 1");
  const std::int64_t channels = input.dim(0);
  for (const Tensor* t : {&mean, &var, &gamma, &beta}) {
    require_rank(op, "statistics", *t, {1});
    require_extent(op, "channels", channels, t->dim(0));
  }
  const std::int64_t inner = input.size() / channels;
  Tensor out = input;
  auto y = out.data();
  for (std::int64_t c = 0; c < channels; ++c) {
    const float inv = gamma[c] / std::sqrt(var[c] + eps);
    const float shift = beta[c] - mean[c] * inv;
    for (std::int64_t i = 0; i < inner; ++i) {
      auto& v = y[static_cast<std::size_t>(c * inner + i)];
      v = v * inv + shift;
    }
  }
  return out;
}

Tensor softmax(const Tensor& input) {
  if (input.rank() == 0) throw DimensionError("softmax", "input must have rank >= 1");
  const std::int64_t n = input.dim(input.rank() - 1);
  const std::int64_t rows = input.size() / n;
  Tensor out = input;
  auto y = out.data();
  for (std::int64_t r = 0; r < rows; ++r) {
    auto row = y.subspan(static_cast<std::size_t>(r * n), static_cast<std::size_t>(n));
    const float m = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (auto& v : row) {
      v = std::exp(v - m);
      sum += v;
    }
    for (auto& v : row) v = static_cast<float>(v / sum);
  }
  return out;
}

Tensor residual_add(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) {
    throw DimensionError("residual_add", "operand shapes differ: " + to_string(a.shape()) +
                                             " vs " + to_string(b.shape()));
  }
  Tensor out = a;
  auto y = out.data();
  const auto x = b.data();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += x[i];
  return out;
}

Tensor global_avgpool(const Tensor& input, PoolAxes axes) {
  constexpr const char* op = "global_avgpool";
  const std::size_t reduced = axes == PoolAxes::spatial ? 2 : 1;
  if (axes == PoolAxes::spatial) {
    require_rank(op, "input", input, {3, 4});
  } else {
    require_rank(op, "input", input, {2});
  }
  Shape out_shape(input.shape().begin(), input.shape().end() - static_cast<std::ptrdiff_t>(reduced));
  const std::int64_t inner = input.size() / volume(out_shape);
  Tensor out(out_shape);
  const auto x = input.data();
  auto y = out.data();
  for (std::size_t o = 0; o < y.size(); ++o) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < inner; ++i) sum += x[o * static_cast<std::size_t>(inner) + static_cast<std::size_t>(i)];
    y[o] = static_cast<float>(sum / static_cast<double>(inner));
  }
  return out;
}

}  // namespace vsrcost
