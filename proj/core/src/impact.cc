#include "vsrcost/impact.h"

#include "vsrcost/errors.h"

namespace vsrcost {

namespace {

constexpr double kPicojoulesPerMillijoule = 1e9;

ImpactReport make_report(double flops, double mem, const EnergyTable& table,
                         const CarbonFactor& factor, MemorySource source) {
  table.validate();
  ImpactReport r;
  r.energy_mj = energy_per_inference(flops, mem, table, DramEnergy::midpoint);
  r.energy_low_mj = energy_per_inference(flops, mem, table, DramEnergy::low);
  r.energy_high_mj = energy_per_inference(flops, mem, table, DramEnergy::high);
  r.co2_mg = co2_per_inference(r.energy_mj, factor);
  r.source = source;
  return r;
}

}  // namespace

std::string_view to_string(DramEnergy level) {
  switch (level) {
    case DramEnergy::low: return "low";
    case DramEnergy::high: return "high";
    default: return "midpoint";
  }
}

std::string_view to_string(MemorySource source) {
  return source == MemorySource::raw_counts ? "raw_counts" : "published_figures";
}

double EnergyTable::dram_pj(DramEnergy level) const {
  switch (level) {
    case DramEnergy::low: return dram_low_pj;
    case DramEnergy::high: return dram_high_pj;
    default: return dram_default_pj;
  }
}

void EnergyTable::validate() const {
  if (!(add_pj > 0 && mult_pj > 0 && dram_low_pj > 0)) {
    throw ValidationError("energy table entries must be positive");
  }
  if (!(dram_low_pj <= dram_default_pj && dram_default_pj <= dram_high_pj)) {
    throw ValidationError("energy table requires dram low <= default <= high");
  }
}

double energy_per_inference(double flops, double mem_accesses, const EnergyTable& table,
                            DramEnergy level) {
  if (flops < 0 || mem_accesses < 0) {
    throw ValidationError("energy_per_inference: counts must be non-negative");
  }
  const double half = flops / 2.0;
  const double pj = half * table.mult_pj + half * table.add_pj + mem_accesses * table.dram_pj(level);
  return pj / kPicojoulesPerMillijoule;
}

double co2_per_inference(double energy_mj, const CarbonFactor& factor) {
  return energy_mj * factor.mg_per_mj;
}

ImpactReport impact_report(const CostReport& costs, const EnergyTable& table,
                           const CarbonFactor& factor) {
  return make_report(static_cast<double>(costs.totals.flops),
                     static_cast<double>(costs.totals.memory_accesses), table, factor,
                     MemorySource::raw_counts);
}

ImpactReport impact_report(const ModelFigures& figures, const EnergyTable& table,
                           const CarbonFactor& factor) {
  return make_report(figures.flops_b * 1e9, figures.mem_access_k * 1e3, table, factor,
                     MemorySource::published_figures);
}

ImpactReport impact_report(const ReferencePreset& preset, const EnergyTable& table,
                           const CarbonFactor& factor) {
  return impact_report(figures_of(preset), table, factor);
}

}  // namespace vsrcost
