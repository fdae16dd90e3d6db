#pragma once

#include <array>

namespace vsrcost::testing {

// Published model-level figures and per-inference energy/CO2 for the
// MobiVSR variants and the two comparison models.
struct PublishedRow {
  const char* name;
  int alpha;  // 0 for the comparison models
  double size_mb;
  double params_m;
  double mem_access_k;
  double flops_b;
  double top1;
  double energy_mj;
  double co2_mg;
};

inline constexpr std::array<PublishedRow, 8> kPublishedRows = {{
    {"MobiVSR-1", 1, 17.8, 4.5, 35.3, 11.0, 72.2, 25.37, 3.21},
    {"MobiVSR-2", 2, 20.8, 5.2, 37.3, 20.1, 73.0, 46.30, 5.85},
    {"MobiVSR-3", 3, 23.6, 5.9, 38.9, 29.5, 73.4, 67.92, 8.59},
    {"MobiVSR-4", 4, 26.5, 6.6, 40.4, 40.1, 74.0, 92.31, 11.67},
    {"MobiVSR-10", 10, 43.9, 10.8, 51.5, 92.4, 77.1, 212.62, 26.89},
    {"MobiVSR-11", 11, 46.8, 11.5, 53.3, 99.8, 77.5, 229.64, 29.01},
    {"LSTM + ResNet (SOTA)", 0, 130.0, 25.1, 56.3, 290.0, 83.0, 667.11, 84.38},
    {"LRW Baseline", 0, 43.2, 8.7, 44.0, 95.7, 61.0, 229.39, 29.01},
}};

// The baseline's energy does not follow from its own FLOPs column.
inline bool energy_consistent(const PublishedRow& row) {
  return row.name != kPublishedRows.back().name;
}

}  // namespace vsrcost::testing
