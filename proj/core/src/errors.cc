#include "vsrcost/errors.h"

#include <utility>

namespace vsrcost {

DimensionError::DimensionError(std::string op, std::string axis,
                               std::int64_t expected, std::int64_t actual)
    : Error(op + ": dimension mismatch on axis '" + axis + "': expected " +
            std::to_string(expected) + ", got " + std::to_string(actual)),
      op_(std::move(op)),
      axis_(std::move(axis)),
      expected_(expected),
      actual_(actual) {}

DimensionError::DimensionError(std::string op, std::string message)
    : Error(op + ": " + message), op_(std::move(op)) {}

SchemaError::SchemaError(std::string position, const std::string& message)
    : Error(position + ": " + message), position_(std::move(position)) {}

}  // namespace vsrcost
