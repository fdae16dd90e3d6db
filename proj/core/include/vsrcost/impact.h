#pragma once

#include <string_view>

#include "vsrcost/arch.h"
#include "vsrcost/cost_model.h"

namespace vsrcost {

enum class DramEnergy { low, midpoint, high };

std::string_view to_string(DramEnergy level);

// Energy per operation at 45 nm, in picojoules. DRAM cost is a range; the
// midpoint is the default.
struct EnergyTable {
  double add_pj = 0.9;
  double mult_pj = 3.7;
  double dram_low_pj = 1300.0;
  double dram_high_pj = 2600.0;
  double dram_default_pj = 1950.0;

  double dram_pj(DramEnergy level) const;
  // Throws ValidationError unless low <= default <= high and all are positive.
  void validate() const;
};

struct CarbonFactor {
  double mg_per_mj = 0.1265;
};

// Millijoules for `flops` floating-point operations (half multiplies, half
// adds) and `mem_accesses` DRAM accesses.
double energy_per_inference(double flops, double mem_accesses, const EnergyTable& table = {},
                            DramEnergy level = DramEnergy::midpoint);

double co2_per_inference(double energy_mj, const CarbonFactor& factor = {});

// Where the memory-access count behind an estimate came from.
enum class MemorySource { raw_counts, published_figures };

std::string_view to_string(MemorySource source);

struct ImpactReport {
  double energy_mj = 0;
  double energy_low_mj = 0;   // DRAM at the low end of its range
  double energy_high_mj = 0;  // DRAM at the high end
  double co2_mg = 0;
  MemorySource source = MemorySource::raw_counts;
};

// From analytically counted FLOPs and memory accesses.
ImpactReport impact_report(const CostReport& costs, const EnergyTable& table = {},
                           const CarbonFactor& factor = {});

// From a preset's published FLOPs (billions) and memory accesses (thousands).
ImpactReport impact_report(const ReferencePreset& preset, const EnergyTable& table = {},
                           const CarbonFactor& factor = {});

// From published figures of any model.
ImpactReport impact_report(const ModelFigures& figures, const EnergyTable& table = {},
                           const CarbonFactor& factor = {});

}  // namespace vsrcost
