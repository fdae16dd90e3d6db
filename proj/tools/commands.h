#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "output.h"

namespace vsrcost::cli {

// Bad flag values that CLI11 cannot check on its own. Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  int alpha = 1;
  std::string plan;
  std::filesystem::path out;
};

struct InitWeightsOptions {
  std::filesystem::path graph;
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct ReportOptions {
  std::filesystem::path graph;
  std::string dtype = "fp32";
  Format format = Format::table;
};

struct CompareOptions {
  std::string alphas = "1,2,3,4,10,11";
  bool presets = true;
  std::string dtype = "fp32";
  Format format = Format::table;
};

struct InferOptions {
  std::filesystem::path graph;
  std::filesystem::path weights;
  std::filesystem::path input;  // frame directory or clip file
  bool counted = false;
  int top_k = 5;
  std::optional<std::filesystem::path> labels;
  Format format = Format::table;
};

struct QuantizeOptions {
  std::filesystem::path weights;
  std::filesystem::path out;
  Format format = Format::table;
};

struct PreprocessOptions {
  std::filesystem::path frames;
  std::filesystem::path out;
};

struct EnergyOptions {
  double flops = 0;
  double mem = 0;
  std::string dram = "midpoint";
  double carbon = 0.1265;
  Format format = Format::table;
};

int cmd_build(const BuildOptions& o);
int cmd_init_weights(const InitWeightsOptions& o);
int cmd_report(const ReportOptions& o);
int cmd_compare(const CompareOptions& o);
int cmd_infer(const InferOptions& o);
int cmd_quantize(const QuantizeOptions& o);
int cmd_preprocess(const PreprocessOptions& o);
int cmd_energy(const EnergyOptions& o);

// "1,2,3" -> {1, 2, 3}; the empty string is the empty list.
std::vector<int> parse_alpha_list(const std::string& text);

}  // namespace vsrcost::cli
