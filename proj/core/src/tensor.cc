#include "vsrcost/tensor.h"

#include <cmath>
#include <sstream>
#include <utility>

#include "vsrcost/errors.h"

namespace vsrcost {

namespace {

void check_extents(const Shape& shape) {
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    if (shape[axis] <= 0) {
      throw ValidationError("tensor extent on axis " + std::to_string(axis) +
                            " must be positive, got " + std::to_string(shape[axis]));
    }
  }
}

}  // namespace

std::int64_t volume(std::span<const std::int64_t> shape) {
  std::int64_t v = 1;
  for (auto extent : shape) v *= extent;
  return v;
}

std::string to_string(std::span<const std::int64_t> shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

Tensor::Tensor(Shape shape) : shape_(std::move(shape)) {
  check_extents(shape_);
  data_.assign(static_cast<std::size_t>(volume(shape_)), 0.0f);
}

Tensor::Tensor(Shape shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  check_extents(shape_);
  if (volume(shape_) != static_cast<std::int64_t>(data_.size())) {
    throw ValidationError("tensor shape " + to_string(shape_) + " holds " +
                          std::to_string(volume(shape_)) + " elements but " +
                          std::to_string(data_.size()) + " were supplied");
  }
}

Tensor Tensor::filled(Shape shape, float value) {
  Tensor t(std::move(shape));
  for (auto& x : t.data_) x = value;
  return t;
}

Tensor Tensor::reshaped(Shape shape) const {
  return Tensor(std::move(shape), data_);
}

QuantizedTensor::QuantizedTensor(Shape shape, std::vector<std::int8_t> values,
                                 QuantParams params)
    : shape_(std::move(shape)), values_(std::move(values)), params_(params) {
  check_extents(shape_);
  if (volume(shape_) != static_cast<std::int64_t>(values_.size())) {
    throw ValidationError("quantized tensor shape " + to_string(shape_) +
                          " does not match " + std::to_string(values_.size()) +
                          " values");
  }
  if (!(params_.scale > 0.0f) || !std::isfinite(params_.scale)) {
    throw ValidationError("quantization scale must be positive and finite");
  }
}

Tensor QuantizedTensor::dequantize() const {
  std::vector<float> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out[i] = static_cast<float>(static_cast<std::int32_t>(values_[i]) - params_.zero_point) *
             params_.scale;
  }
  return Tensor(shape_, std::move(out));
}

}  // namespace vsrcost
