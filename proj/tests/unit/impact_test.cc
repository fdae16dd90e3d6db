#include <gtest/gtest.h>

#include "published.h"
#include "vsrcost/errors.h"
#include "vsrcost/impact.h"

namespace vsrcost {
namespace {

using testing::kPublishedRows;

double rel(double got, double want) { return std::abs(got - want) / want; }

TEST(Energy, WorkedExamples) {
  // 25.3 mJ of arithmetic plus 0.0688 mJ of DRAM traffic.
  EXPECT_DOUBLE_EQ(energy_per_inference(11e9, 35.3e3), (5.5e9 * 3.7 + 5.5e9 * 0.9 + 35.3e3 * 1950) * 1e-9);
  EXPECT_LT(rel(energy_per_inference(11e9, 35.3e3), 25.30), 0.005);
  EXPECT_LT(rel(energy_per_inference(11e9, 35.3e3), 25.37), 0.005);
  EXPECT_LT(rel(energy_per_inference(290e9, 56.3e3), 667.0), 0.005);
  EXPECT_LT(rel(energy_per_inference(290e9, 56.3e3), 667.11), 0.005);
  EXPECT_EQ(energy_per_inference(0, 0), 0.0);
}

TEST(Energy, ReproducesPublishedRows) {
  for (const auto& row : kPublishedRows) {
    if (!testing::energy_consistent(row)) continue;
    const double e = energy_per_inference(row.flops_b * 1e9, row.mem_access_k * 1e3);
    EXPECT_LT(rel(e, row.energy_mj), 0.01) << row.name << " " << e;
    EXPECT_LT(rel(co2_per_inference(e), row.co2_mg), 0.01) << row.name;
  }
}

TEST(Energy, BaselineRowIsInconsistentWithItsFlops) {
  const auto& row = kPublishedRows.back();
  const double e = energy_per_inference(row.flops_b * 1e9, row.mem_access_k * 1e3);
  EXPECT_GT(rel(e, row.energy_mj), 0.03);
}

TEST(Energy, LinearAndMonotone) {
  const double a = energy_per_inference(1e9, 1e3);
  const double b = energy_per_inference(2e9, 2e3);
  EXPECT_NEAR(b, 2 * a, 1e-12);
  EXPECT_GT(energy_per_inference(1e9 + 2, 1e3), a);
  EXPECT_GT(energy_per_inference(1e9, 1e3 + 1), a);
}

TEST(Energy, DramRange) {
  EnergyTable t;
  EXPECT_EQ(t.dram_pj(DramEnergy::low), 1300.0);
  EXPECT_EQ(t.dram_pj(DramEnergy::midpoint), 1950.0);
  EXPECT_EQ(t.dram_pj(DramEnergy::high), 2600.0);
  EXPECT_LT(energy_per_inference(0, 1e6, t, DramEnergy::low),
            energy_per_inference(0, 1e6, t, DramEnergy::high));
  EXPECT_NO_THROW(t.validate());
  t.dram_default_pj = 3000;
  EXPECT_THROW(t.validate(), ValidationError);
}

TEST(Carbon, Examples) {
  EXPECT_NEAR(co2_per_inference(25.37), 3.21, 0.005);
  EXPECT_NEAR(co2_per_inference(667.11), 84.39, 0.005);
  EXPECT_EQ(co2_per_inference(0), 0.0);
}

TEST(Carbon, RatioConstantAcrossRows) {
  for (const auto& row : kPublishedRows) {
    ImpactReport r = impact_report(ModelFigures{row.size_mb, row.params_m, row.mem_access_k, row.flops_b});
    EXPECT_NEAR(r.co2_mg / r.energy_mj, CarbonFactor{}.mg_per_mj, 1e-12);
  }
}

TEST(ImpactReport, PresetsUsePublishedColumns) {
  const auto& sota = reference_presets()[0];
  ImpactReport r = impact_report(sota);
  EXPECT_EQ(r.source, MemorySource::published_figures);
  EXPECT_LT(rel(r.energy_mj, 667.11), 0.01);
  EXPECT_LE(r.energy_low_mj, r.energy_mj);
  EXPECT_GE(r.energy_high_mj, r.energy_mj);
}

TEST(ImpactReport, CostReportUsesRawCounts) {
  CostReport c;
  c.totals = {10, 1000, 2'000'000};
  ImpactReport r = impact_report(c);
  EXPECT_EQ(r.source, MemorySource::raw_counts);
  EXPECT_DOUBLE_EQ(r.energy_mj, energy_per_inference(2e6, 1000));
}

}  // namespace
}  // namespace vsrcost
