#pragma once

#include <vector>

#include "effectplan/measures.hpp"

namespace effectplan {

/// Proportion Pe of the population exposed to / receiving the intervention.
class ExposurePrevalence {
 public:
  explicit ExposurePrevalence(double pe);  // 0 <= pe <= 1
  double value() const noexcept { return pe_; }

 private:
  double pe_;
};

/// Population attributable fraction with the inputs that produced it.
/// For a beneficial intervention entered by magnitude it reads as the
/// fraction of the adverse outcome avertable by universalizing it.
struct PafResult {
  double paf;
  double rr;
  double pe;
  double d = 0.0;   // SMD magnitude when computed from an SMD, else 0
  double p0 = 0.0;  // baseline risk when known, else 0
};

/// PAF = Pe (RR - 1) / (1 + Pe (RR - 1)). Throws UsageError for RR < 1;
/// invert the effect first.
PafResult paf_from_rr(const RelativeRiskValue& rr, ExposurePrevalence pe);

/// Chain |d| -> OR -> RR(P0) -> PAF.
PafResult paf_from_smd(SmdValue d, OutcomeContext context, ExposurePrevalence pe);

struct PafGridRow {
  double d;
  double p0;
  std::vector<PafResult> cells;  // one per Pe, in axis order
};

struct PafGrid {
  std::vector<double> pes;
  std::vector<PafGridRow> rows;  // d-major, then p0
};

/// Throws UsageError when an axis is empty.
PafGrid paf_grid(const std::vector<SmdValue>& ds, const std::vector<OutcomeContext>& p0s,
                 const std::vector<ExposurePrevalence>& pes);

/// Grid with the conventional axes d in {0.01, 0.2, 0.5, 0.8, 1.2, 2},
/// P0 in {0.01, 0.2} and Pe in {0.01, 0.2, 0.5}.
PafGrid default_paf_grid();

}  // namespace effectplan
