#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vsrcost {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operand has the wrong extent along a named axis.
class DimensionError : public Error {
 public:
  DimensionError(std::string op, std::string axis, std::int64_t expected,
                 std::int64_t actual);
  DimensionError(std::string op, std::string message);

  const std::string& op() const { return op_; }
  const std::string& axis() const { return axis_; }
  std::int64_t expected() const { return expected_; }
  std::int64_t actual() const { return actual_; }

 private:
  std::string op_;
  std::string axis_;
  std::int64_t expected_ = 0;
  std::int64_t actual_ = 0;
};

// Invalid hyperparameters, arguments or input data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed graph or weights file. `position` is a JSON path, node id or
// byte offset, whichever locates the problem.
class SchemaError : public Error {
 public:
  SchemaError(std::string position, const std::string& message);

  const std::string& position() const { return position_; }

 private:
  std::string position_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vsrcost
