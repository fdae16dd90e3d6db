#include "vsrcost/quantize.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vsrcost/errors.h"

namespace vsrcost {

namespace {

constexpr std::int64_t kQmin = std::numeric_limits<std::int8_t>::min();
constexpr std::int64_t kQmax = std::numeric_limits<std::int8_t>::max();

}  // namespace

QuantizedTensor quantize_tensor(const Tensor& tensor) {
  const auto data = tensor.data();
  if (data.empty()) throw ValidationError("quantize_tensor: empty tensor");
  for (float v : data) {
    if (!std::isfinite(v)) throw ValidationError("quantize_tensor: non-finite weight");
  }
  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  const float lo = *lo_it;
  const float hi = *hi_it;

  std::vector<std::int8_t> values(data.size());
  if (lo == hi) {
    // Degenerate range.
    QuantParams params{lo == 0.0f ? 1.0f : std::abs(lo), 0};
    const std::int8_t q = lo > 0.0f ? 1 : (lo < 0.0f ? -1 : 0);
    std::fill(values.begin(), values.end(), q);
    return QuantizedTensor(tensor.shape(), std::move(values), params);
  }

  const float scale = static_cast<float>((static_cast<double>(hi) - lo) / 255.0);
  const double inv = 1.0 / static_cast<double>(scale);
  const std::int64_t zero_point = kQmin - std::llround(static_cast<double>(lo) * inv);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::int64_t q = std::llround(static_cast<double>(data[i]) / scale) + zero_point;
    values[i] = static_cast<std::int8_t>(std::clamp(q, kQmin, kQmax));
  }
  return QuantizedTensor(tensor.shape(), std::move(values),
                         QuantParams{scale, static_cast<std::int32_t>(zero_point)});
}

WeightStore quantize_int8(const WeightStore& weights) {
  WeightStore out;
  for (const auto& e : weights.entries()) {
    if (const auto* t = std::get_if<Tensor>(&e.value)) {
      out.put(e.layer_id, e.role, quantize_tensor(*t));
    } else {
      out.put(e.layer_id, e.role, e.value);
    }
  }
  return out;
}

WeightStore dequantize_weights(const WeightStore& weights) {
  WeightStore out;
  for (const auto& e : weights.entries()) {
    if (const auto* q = std::get_if<QuantizedTensor>(&e.value)) {
      out.put(e.layer_id, e.role, q->dequantize());
    } else {
      out.put(e.layer_id, e.role, e.value);
    }
  }
  return out;
}

}  // namespace vsrcost
