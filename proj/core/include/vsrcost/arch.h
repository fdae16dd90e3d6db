#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsrcost/cost_model.h"
#include "vsrcost/graph.h"

namespace vsrcost {

// ---------------------------------------------------------------------------
// LipRes blocks
// ---------------------------------------------------------------------------

enum class LipResVariant { keep, downsample };

std::string_view to_string(LipResVariant variant);

// Inside a block, node inputs and the residual source may refer to the
// block's input by this id. append_block() rewrites it.
inline constexpr std::string_view kBlockInput = "@in";

// Residual block of two 3x3 depthwise-separable convolutions with a ReLU in
// between and a ReLU after the residual add. The keep variant preserves the
// spatial extent and uses an identity skip (a stride-1 projection when the
// channel count changes). The downsample variant uses stride 2 in the first
// convolution and a stride-2 convolution on the skip path.
struct LipResBlock {
  LipResVariant variant = LipResVariant::keep;
  std::int64_t channels_in = 0;
  std::int64_t channels_out = 0;
  std::vector<Node> nodes;  // ids local to the block
  ResidualEdge residual;
};

LipResBlock build_lipres(LipResVariant variant, std::int64_t channels_in,
                         std::int64_t channels_out, std::int64_t skip_kernel = 1);

// Appends the block with ids prefixed by "<prefix>."; returns the id of the
// block's last node.
std::string append_block(LayerGraph& graph, const LipResBlock& block, std::string_view prefix);

// The block alone as a graph whose input is the block input.
LayerGraph block_graph(const LipResBlock& block, Shape input_shape);

// ---------------------------------------------------------------------------
// MobiVSR
// ---------------------------------------------------------------------------

// Widths the network description leaves open.
struct ChannelPlan {
  std::string name;
  std::array<std::int64_t, 2> frontend{};  // output channels of the two DS-Conv3D layers
  std::array<std::int64_t, 4> widths{};    // LipRes subgraph widths
  std::int64_t skip_kernel = 1;            // kernel of the stride-2 skip convolution
  std::array<std::int64_t, 2> temporal{};  // output channels of the two temporal convolutions
  std::int64_t temporal_kernel = 3;
  std::int64_t pool_window = 2;
  std::int64_t fc_hidden = 0;
  std::int64_t classes = 500;

  friend bool operator==(const ChannelPlan&, const ChannelPlan&) = default;
};

// Candidate set searched by calibrate_channel_plan().
std::vector<ChannelPlan> candidate_channel_plans();

// The frozen result of calibrating against 4.5M parameters at alpha = 1
// and 0.7M parameters per unit alpha.
const ChannelPlan& default_channel_plan();

std::optional<ChannelPlan> find_channel_plan(std::string_view name);

struct CalibrationTarget {
  double params_alpha1 = 4.5e6;
  double increment = 0.7e6;
};

struct Calibration {
  ChannelPlan plan;
  std::uint64_t params_alpha1 = 0;
  std::uint64_t increment = 0;
  double score = 0;  // sum of relative errors against the target
};

// Best candidate by score; ties resolve to the earliest candidate.
Calibration calibrate_channel_plan(std::span<const ChannelPlan> candidates,
                                   CalibrationTarget target = {});

// 1 channel x 29 frames x 96 x 96.
Shape mobivsr_input_shape();

// Front-end: two DS-Conv3D (3x3x3, partial pointwise, spatial stride 2), each
// followed by batchnorm and ReLU. Middle: four subgraphs of `alpha` LipRes
// blocks; subgraph 1 keeps the spatial extent, subgraphs 2-4 open with one
// downsample block. Blocks run per frame. Back-end: spatial average, temporal
// conv, ReLU, maxpool, temporal conv, ReLU, temporal average, then two fully
// connected layers and a softmax over the classes.
LayerGraph build_mobivsr(int alpha, const ChannelPlan& plan = default_channel_plan());

std::string mobivsr_name(int alpha);

// ---------------------------------------------------------------------------
// Published comparison models
// ---------------------------------------------------------------------------

struct ReferencePreset {
  std::string_view name;
  double size_mb;
  double params_m;
  double mem_access_k;  // thousands of accesses
  double flops_b;       // billions
  double top1;
  double top3;
  double listed_energy_mj;  // per-inference energy quoted alongside the figures
};

// The two external models of the comparison table, as literals.
std::span<const ReferencePreset> reference_presets();

ModelFigures figures_of(const ReferencePreset& preset);

}  // namespace vsrcost
