#pragma once

#include <cstdint>

namespace vsrcost {

// Operation tallies gathered while a kernel runs in counting mode.
//
// Accounting model:
//  - one multiply and one accumulator add per multiply-accumulate, so that
//    flops() is exactly twice the number of products;
//  - each parameter is read once per forward pass (weight-stationary);
//  - convolutions read one input activation per multiply, zero padding
//    included; fully connected layers read each input element once;
//  - each element of the layer's final output is written once.
struct CounterLedger {
  std::uint64_t multiplies = 0;
  std::uint64_t adds = 0;
  std::uint64_t param_reads = 0;
  std::uint64_t activation_reads = 0;
  std::uint64_t output_writes = 0;

  std::uint64_t flops() const { return multiplies + adds; }
  std::uint64_t memory_accesses() const {
    return param_reads + activation_reads + output_writes;
  }

  CounterLedger& operator+=(const CounterLedger& other) {
    multiplies += other.multiplies;
    adds += other.adds;
    param_reads += other.param_reads;
    activation_reads += other.activation_reads;
    output_writes += other.output_writes;
    return *this;
  }

  friend CounterLedger operator+(CounterLedger a, const CounterLedger& b) { return a += b; }
  friend bool operator==(const CounterLedger&, const CounterLedger&) = default;
};

}  // namespace vsrcost
