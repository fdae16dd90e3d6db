#include "vsrcost/arch.h"

#include <array>
#include <cmath>
#include <utility>

#include "vsrcost/errors.h"

namespace vsrcost {

std::string_view to_string(LipResVariant variant) {
  return variant == LipResVariant::keep ? "keep" : "downsample";
}

LipResBlock build_lipres(LipResVariant variant, std::int64_t channels_in,
                         std::int64_t channels_out, std::int64_t skip_kernel) {
  if (channels_in <= 0 || channels_out <= 0) {
    throw ValidationError("build_lipres: channel counts must be positive, got " +
                          std::to_string(channels_in) + " -> " + std::to_string(channels_out));
  }
  if (skip_kernel <= 0) throw ValidationError("build_lipres: skip kernel must be positive");

  LipResBlock block{variant, channels_in, channels_out, {}, {}};
  const std::string in(kBlockInput);
  const std::int64_t stride = variant == LipResVariant::downsample ? 2 : 1;
  const bool projected = variant == LipResVariant::downsample || channels_in != channels_out;

  if (projected) {
    block.nodes.push_back(
        {"skip",
         Conv2dSpec{channels_in, channels_out,
                    variant == LipResVariant::downsample ? skip_kernel : 1, stride,
                    Padding::same},
         in});
  }
  block.nodes.push_back(
      {"conv1", DsConv2dSpec{channels_in, channels_out, 3, stride, Padding::same}, in});
  block.nodes.push_back({"relu1", ReluSpec{}, std::nullopt});
  block.nodes.push_back(
      {"conv2", DsConv2dSpec{channels_out, channels_out, 3, 1, Padding::same}, std::nullopt});
  block.nodes.push_back({"add", ResidualAddSpec{}, std::nullopt});
  block.nodes.push_back({"relu2", ReluSpec{}, std::nullopt});
  block.residual = {projected ? "skip" : in, "add"};
  return block;
}

std::string append_block(LayerGraph& graph, const LipResBlock& block, std::string_view prefix) {
  const std::string block_input =
      graph.empty() ? std::string(kGraphInput) : graph.nodes().back().id;
  auto rename = [&](const std::string& local) {
    if (local == kBlockInput) return block_input;
    return std::string(prefix) + "." + local;
  };
  for (const auto& n : block.nodes) {
    std::optional<std::string> input;
    if (n.input) input = rename(*n.input);
    graph.add(rename(n.id), n.spec, std::move(input));
  }
  graph.add_residual(rename(block.residual.source), rename(block.residual.destination));
  return graph.nodes().back().id;
}

LayerGraph block_graph(const LipResBlock& block, Shape input_shape) {
  LayerGraph g;
  g.name = std::string("lipres-") + std::string(to_string(block.variant));
  g.input_shape = std::move(input_shape);
  for (const auto& n : block.nodes) {
    std::optional<std::string> input;
    if (n.input) input = *n.input == kBlockInput ? std::string(kGraphInput) : *n.input;
    g.add(n.id, n.spec, std::move(input));
  }
  auto source = block.residual.source == kBlockInput ? std::string(kGraphInput)
                                                     : block.residual.source;
  g.add_residual(std::move(source), block.residual.destination);
  return g;
}

namespace {

std::string plan_name(const ChannelPlan& p) {
  return "lipres-w" + std::to_string(p.widths[0]) + "-s" + std::to_string(p.skip_kernel) + "-t" +
         std::to_string(p.temporal[0]) + "x" + std::to_string(p.temporal[1]) + "-fc" +
         std::to_string(p.fc_hidden);
}

ChannelPlan make_plan(std::array<std::int64_t, 4> widths, std::int64_t skip_kernel,
                      std::array<std::int64_t, 2> temporal, std::int64_t fc_hidden) {
  ChannelPlan p;
  p.frontend = {32, widths[0]};
  p.widths = widths;
  p.skip_kernel = skip_kernel;
  p.temporal = temporal;
  p.fc_hidden = fc_hidden;
  p.name = plan_name(p);
  return p;
}

}  // namespace

std::vector<ChannelPlan> candidate_channel_plans() {
  constexpr std::array<std::array<std::int64_t, 4>, 3> kWidths = {{
      {48, 96, 192, 384},
      {64, 128, 256, 512},
      {80, 160, 320, 640},
  }};
  constexpr std::array<std::int64_t, 2> kSkipKernels = {1, 3};
  constexpr std::array<std::array<std::int64_t, 2>, 3> kTemporal = {{
      {512, 512},
      {512, 1024},
      {1024, 1024},
  }};
  constexpr std::array<std::int64_t, 2> kFcHidden = {512, 1024};

  std::vector<ChannelPlan> out;
  for (const auto& w : kWidths)
    for (auto s : kSkipKernels)
      for (const auto& t : kTemporal)
        for (auto fc : kFcHidden) out.push_back(make_plan(w, s, t, fc));
  return out;
}

const ChannelPlan& default_channel_plan() {
  // Frozen output of calibrate_channel_plan(candidate_channel_plans()):
  // 4,636,571 parameters at alpha = 1, 713,600 per unit alpha.
  static const ChannelPlan plan = make_plan({64, 128, 256, 512}, 1, {512, 1024}, 1024);
  return plan;
}

std::optional<ChannelPlan> find_channel_plan(std::string_view name) {
  for (auto& p : candidate_channel_plans())
    if (p.name == name) return p;
  return std::nullopt;
}

Calibration calibrate_channel_plan(std::span<const ChannelPlan> candidates,
                                   CalibrationTarget target) {
  if (candidates.empty()) throw ValidationError("calibrate_channel_plan: no candidates");
  std::optional<Calibration> best;
  for (const auto& plan : candidates) {
    const auto p1 = aggregate(build_mobivsr(1, plan)).totals.params;
    const auto p2 = aggregate(build_mobivsr(2, plan)).totals.params;
    const auto inc = p2 - p1;
    const double score = std::abs(static_cast<double>(p1) / target.params_alpha1 - 1.0) +
                         std::abs(static_cast<double>(inc) / target.increment - 1.0);
    if (!best || score < best->score) best = Calibration{plan, p1, inc, score};
  }
  return *best;
}

Shape mobivsr_input_shape() { return {1, 29, 96, 96}; }

std::string mobivsr_name(int alpha) { return "MobiVSR-" + std::to_string(alpha); }

LayerGraph build_mobivsr(int alpha, const ChannelPlan& plan) {
  if (alpha < 1) {
    throw ValidationError("build_mobivsr: alpha must be >= 1, got " + std::to_string(alpha));
  }
  if (plan.frontend[1] != plan.widths[0]) {
    throw ValidationError("build_mobivsr: front-end output width must equal the first subgraph width");
  }

  LayerGraph g;
  g.name = mobivsr_name(alpha);
  g.channel_plan = plan.name;
  g.input_shape = mobivsr_input_shape();

  // Front-end.
  std::int64_t channels = g.input_shape[0];
  for (int i = 0; i < 2; ++i) {
    const std::string id = "frontend.conv" + std::to_string(i + 1);
    DsConv3dSpec conv;
    conv.in_channels = channels;
    conv.out_channels = plan.frontend[static_cast<std::size_t>(i)];
    conv.kernel = 3;
    conv.temporal_kernel = 3;
    conv.stride = 2;
    conv.temporal_stride = 1;
    conv.pointwise_mode = PointwiseMode::partial;
    g.add(id, conv);
    g.add(id + ".bn", BatchNormSpec{conv.out_channels, 1e-5f});
    g.add(id + ".relu", ReluSpec{});
    channels = conv.out_channels;
  }

  // Middle stack.
  for (int s = 0; s < 4; ++s) {
    const std::int64_t width = plan.widths[static_cast<std::size_t>(s)];
    for (int b = 0; b < alpha; ++b) {
      const bool down = s > 0 && b == 0;
      const auto block = build_lipres(down ? LipResVariant::downsample : LipResVariant::keep,
                                      channels, width, plan.skip_kernel);
      append_block(g, block,
                   "subgraph" + std::to_string(s + 1) + ".block" + std::to_string(b + 1));
      channels = width;
    }
  }

  // Back-end.
  g.add("backend.spatial_pool", GlobalAvgPoolSpec{PoolAxes::spatial});
  g.add("backend.tconv1",
        TemporalConv1dSpec{channels, plan.temporal[0], plan.temporal_kernel, 1, Padding::same});
  g.add("backend.tconv1.relu", ReluSpec{});
  g.add("backend.maxpool", MaxPoolSpec{plan.pool_window, plan.pool_window});
  g.add("backend.tconv2", TemporalConv1dSpec{plan.temporal[0], plan.temporal[1],
                                             plan.temporal_kernel, 1, Padding::same});
  g.add("backend.tconv2.relu", ReluSpec{});
  g.add("backend.temporal_pool", GlobalAvgPoolSpec{PoolAxes::temporal});
  g.add("classifier.fc1", FullyConnectedSpec{plan.temporal[1], plan.fc_hidden});
  g.add("classifier.fc1.relu", ReluSpec{});
  g.add("classifier.fc2", FullyConnectedSpec{plan.fc_hidden, plan.classes});
  g.add("classifier.softmax", SoftmaxSpec{});
  return g;
}

namespace {

constexpr std::array<ReferencePreset, 2> kPresets = {{
    {"LSTM + ResNet (SOTA)", 130.0, 25.1, 56.3, 290.0, 83.0, 99.8, 667.11},
    {"LRW Baseline", 43.2, 8.7, 44.0, 95.7, 61.0, 78.0, 229.39},
}};

}  // namespace

std::span<const ReferencePreset> reference_presets() { return kPresets; }

ModelFigures figures_of(const ReferencePreset& preset) {
  return {preset.size_mb, preset.params_m, preset.mem_access_k, preset.flops_b};
}

}  // namespace vsrcost
