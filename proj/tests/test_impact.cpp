#include <gtest/gtest.h>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"
#include "effectplan/impact.hpp"
#include "oracles.hpp"

using namespace effectplan;

TEST(PafFromRr, Examples) {
  for (double pe : {0.0, 0.01, 0.5, 1.0}) {
    EXPECT_EQ(paf_from_rr(RelativeRiskValue(1.0, OutcomeContext(0.2)), ExposurePrevalence(pe)).paf, 0.0);
  }
  const auto rr_half = or_to_rr(smd_to_or(SmdValue(0.5)), OutcomeContext(0.01));
  EXPECT_EQ(format_fixed(paf_from_rr(rr_half, ExposurePrevalence(0.5)).paf, 2), "0.42");
  EXPECT_NEAR(paf_from_rr(RelativeRiskValue(3.0, OutcomeContext(0.1)), ExposurePrevalence(0.25)).paf,
              1.0 / 3.0, 1e-15);
}

TEST(PafFromRr, RejectsProtectiveRr) {
  EXPECT_THROW(paf_from_rr(RelativeRiskValue(0.7, OutcomeContext(0.2)), ExposurePrevalence(0.5)),
               UsageError);
  EXPECT_THROW(ExposurePrevalence(1.01), DomainError);
  EXPECT_THROW(ExposurePrevalence(-0.01), DomainError);
}

TEST(PafFromSmd, Examples) {
  EXPECT_EQ(format_fixed(paf_from_smd(SmdValue(0.5), OutcomeContext(0.2), ExposurePrevalence(0.01)).paf, 2),
            "0.01");
  EXPECT_EQ(paf_from_smd(SmdValue(0.0), OutcomeContext(0.3), ExposurePrevalence(0.7)).paf, 0.0);
  EXPECT_EQ(format_fixed(paf_from_smd(SmdValue(2.0), OutcomeContext(0.01), ExposurePrevalence(0.2)).paf, 2),
            "0.84");
  // Beneficial effects enter by magnitude.
  EXPECT_EQ(paf_from_smd(SmdValue(-0.5), OutcomeContext(0.01), ExposurePrevalence(0.5)).paf,
            paf_from_smd(SmdValue(0.5), OutcomeContext(0.01), ExposurePrevalence(0.5)).paf);
}

TEST(PafGrid, DefaultCells) {
  const auto grid = default_paf_grid();
  ASSERT_EQ(grid.rows.size(), 12u);
  ASSERT_EQ(grid.pes.size(), 3u);
  auto cell = [&](double d, double p0, std::size_t pe_index) {
    for (const auto& row : grid.rows) {
      if (row.d == d && row.p0 == p0) return row.cells.at(pe_index).paf;
    }
    ADD_FAILURE() << "missing row " << d << " " << p0;
    return -1.0;
  };
  EXPECT_EQ(format_fixed(cell(0.8, 0.01, 1), 2), "0.39");
  EXPECT_EQ(format_fixed(cell(2.0, 0.2, 2), 2), "0.64");
  EXPECT_EQ(format_fixed(cell(0.01, 0.01, 2), 2), "0.01");
}

TEST(PafGrid, EmptyAxisIsUsageError) {
  EXPECT_THROW(paf_grid({}, {OutcomeContext(0.2)}, {ExposurePrevalence(0.5)}), UsageError);
  EXPECT_THROW(paf_grid({SmdValue(0.2)}, {}, {ExposurePrevalence(0.5)}), UsageError);
  EXPECT_THROW(paf_grid({SmdValue(0.2)}, {OutcomeContext(0.2)}, {}), UsageError);
}

TEST(PafProperties, CohortOracleOnGrid) {
  int cases = 0;
  for (int i = 0; i < 20; ++i) {
    const double rr = 1.0 + 0.5 * i;
    for (int j = 0; j < 20; ++j) {
      const double p0 = 0.001 + j * 0.004;  // keeps rr * p0 < 1
      for (int k = 0; k < 20; ++k) {
        const double pe = k / 19.0;
        const double got = paf_from_rr(RelativeRiskValue(rr, OutcomeContext(p0)), ExposurePrevalence(pe)).paf;
        ASSERT_NEAR(got, oracle::cohort_paf(rr, p0, pe), 1e-12) << rr << " " << p0 << " " << pe;
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 8000);
}

TEST(PafProperties, MonotoneAndBounded) {
  const OutcomeContext ctx(1e-9);
  for (int i = 1; i < 200; ++i) {
    const double rr = 1.0 + 0.1 * i;
    for (int k = 1; k < 50; ++k) {
      const double lo = paf_from_rr(RelativeRiskValue(rr, ctx), ExposurePrevalence(k / 50.0)).paf;
      const double hi = paf_from_rr(RelativeRiskValue(rr, ctx), ExposurePrevalence((k + 1) / 50.0)).paf;
      ASSERT_LT(lo, hi);
      ASSERT_GE(lo, 0.0);
      ASSERT_LT(hi, 1.0);
      const double next_rr =
          paf_from_rr(RelativeRiskValue(rr + 0.1, ctx), ExposurePrevalence(k / 50.0)).paf;
      ASSERT_LT(lo, next_rr);
    }
  }
  EXPECT_GT(paf_from_rr(RelativeRiskValue(1e9, ctx), ExposurePrevalence(1.0)).paf, 0.999999);
}

TEST(PafProperties, RareOutcomeOrderingOverDefaultGrid) {
  const auto grid = default_paf_grid();
  for (std::size_t r = 0; r + 1 < grid.rows.size(); r += 2) {
    const auto& rare = grid.rows[r];
    const auto& common = grid.rows[r + 1];
    ASSERT_EQ(rare.d, common.d);
    ASSERT_LT(rare.p0, common.p0);
    for (std::size_t c = 0; c < grid.pes.size(); ++c) {
      EXPECT_GE(rare.cells[c].paf, common.cells[c].paf) << "d " << rare.d << " pe " << grid.pes[c];
    }
  }
}
