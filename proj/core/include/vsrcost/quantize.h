#pragma once

#include "vsrcost/tensor.h"
#include "vsrcost/weights.h"

namespace vsrcost {

// Per-tensor affine int8 quantization over the tensor's [min, max] range:
//   scale = (max - min) / 255
//   zero_point places min at -128 (and so max at 127)
//   q = clamp(round(w / scale) + zero_point, -128, 127)
// A constant tensor c has no range; it is stored with zero_point 0 and
// scale |c| (scale 1 when c == 0), so it dequantizes to exactly c.
QuantizedTensor quantize_tensor(const Tensor& tensor);

// Quantizes every fp32 entry; entries already in int8 are kept.
WeightStore quantize_int8(const WeightStore& weights);

// Every entry back to fp32.
WeightStore dequantize_weights(const WeightStore& weights);

}  // namespace vsrcost
