#pragma once

// Weights file layout, all integers and floats little-endian:
//
//   offset 0   magic "MVSRW1" (6 bytes)
//              u32 tensor count N
//   manifest   N entries of
//                u16 layer id length, layer id bytes (UTF-8)
//                u16 role length, role bytes
//                u8  dtype (0 = fp32, 1 = int8)
//                u8  rank, then rank x u32 extents
//                u64 payload offset, u64 payload length (bytes)
//              u64 payload length P
//   payload    P bytes; per tensor either
//                fp32: extents-product x f32
//                int8: f32 scale, i32 zero point, extents-product x i8
//
// Offsets are relative to the start of the payload; tensor regions must be
// in bounds and must not overlap.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "vsrcost/weights.h"

namespace vsrcost {

inline constexpr std::string_view kWeightsMagic = "MVSRW1";

std::vector<std::uint8_t> serialize_weights(const WeightStore& weights);

// Throws SchemaError positioned at a byte offset.
WeightStore parse_weights(std::span<const std::uint8_t> bytes);

void save_weights(const WeightStore& weights, const std::filesystem::path& path);
WeightStore load_weights(const std::filesystem::path& path);

// Size of the payload section alone.
std::uint64_t payload_bytes(const WeightStore& weights);

}  // namespace vsrcost
