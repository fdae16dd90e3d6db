#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vsrcost {

// Extents ordered channels x time x height x width; lower-rank layouts drop
// leading or trailing axes (C x H x W, C x L, [I]).
using Shape = std::vector<std::int64_t>;

// Product of extents. Zero extents are allowed here (a shape is not a tensor)
// and yield a zero volume.
std::int64_t volume(std::span<const std::int64_t> shape);

std::string to_string(std::span<const std::int64_t> shape);

// Dense fp32 tensor, row-major. Every extent is positive and
// volume(shape) == data.size().
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape);  // zero-filled
  Tensor(Shape shape, std::vector<float> data);

  static Tensor filled(Shape shape, float value);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::int64_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  float operator[](std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }
  float& operator[](std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }

  // Same data viewed under a new shape of equal volume.
  Tensor reshaped(Shape shape) const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<float> data_;
};

struct QuantParams {
  float scale = 1.0f;
  std::int32_t zero_point = 0;

  friend bool operator==(const QuantParams&, const QuantParams&) = default;
};

// int8 affine-quantized tensor: real = (q - zero_point) * scale, scale > 0.
class QuantizedTensor {
 public:
  QuantizedTensor() = default;
  QuantizedTensor(Shape shape, std::vector<std::int8_t> values, QuantParams params);

  const Shape& shape() const { return shape_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  std::span<const std::int8_t> values() const { return values_; }
  const QuantParams& params() const { return params_; }

  Tensor dequantize() const;

  friend bool operator==(const QuantizedTensor&, const QuantizedTensor&) = default;

 private:
  Shape shape_;
  std::vector<std::int8_t> values_;
  QuantParams params_;
};

}  // namespace vsrcost
