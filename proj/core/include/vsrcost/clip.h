#pragma once

// Clip preprocessing: 29 RGB frames of 256 x 256 are center-cropped to
// 96 x 96, converted to luma (0.299 R + 0.587 G + 0.114 B) and scaled to
// [0, 1].
//
// Frame directories hold 29 files read in lexicographic order, each either a
// binary PPM (P6, maxval 255) or a raw 256 x 256 x 3 byte dump.
//
// Clip files: magic "MVSRC1", u32 frames, u32 height, u32 width, then
// frames x height x width little-endian f32 values.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "vsrcost/tensor.h"

namespace vsrcost {

inline constexpr std::int64_t kClipFrames = 29;
inline constexpr std::int64_t kRawFrameSide = 256;
inline constexpr std::int64_t kClipSide = 96;
inline constexpr std::int64_t kCropOffset = (kRawFrameSide - kClipSide) / 2;
inline constexpr std::string_view kClipMagic = "MVSRC1";

// Interleaved RGB bytes, frame-major: frames x height x width x channels.
struct RawFrames {
  std::int64_t frames = 0;
  std::int64_t height = 0;
  std::int64_t width = 0;
  std::int64_t channels = 3;
  std::vector<std::uint8_t> pixels;
};

// frames: 29 x 96 x 96, values in [0, 1].
struct Clip {
  Tensor frames;

  // 1 x 29 x 96 x 96, the network input layout.
  Tensor as_input() const;
};

// Throws ValidationError on wrong frame count, size or channel count.
Clip preprocess_clip(const RawFrames& raw);

RawFrames read_frame_directory(const std::filesystem::path& dir);

// Single 256 x 256 x 3 frame from PPM or raw bytes.
std::vector<std::uint8_t> decode_frame(std::span<const std::uint8_t> bytes,
                                       std::int64_t* height, std::int64_t* width);

std::vector<std::uint8_t> encode_ppm(std::span<const std::uint8_t> rgb, std::int64_t height,
                                     std::int64_t width);

std::vector<std::uint8_t> serialize_clip(const Clip& clip);
Clip parse_clip(std::span<const std::uint8_t> bytes);

void save_clip(const Clip& clip, const std::filesystem::path& path);
Clip load_clip(const std::filesystem::path& path);

}  // namespace vsrcost
