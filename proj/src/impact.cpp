#include "effectplan/impact.hpp"

#include <cmath>
#include <string>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"

namespace effectplan {

ExposurePrevalence::ExposurePrevalence(double pe) : pe_(pe) {
  if (!std::isfinite(pe) || pe < 0.0 || pe > 1.0) {
    throw DomainError("exposure prevalence pe must lie in [0, 1] (got " + format_full(pe) + ")");
  }
}

PafResult paf_from_rr(const RelativeRiskValue& rr, ExposurePrevalence pe) {
  if (rr.value() < 1.0) {
    throw UsageError("PAF expects RR >= 1 (got " + format_full(rr.value()) +
                     "); invert protective effects for comparability first");
  }
  const double excess = pe.value() * (rr.value() - 1.0);
  return PafResult{.paf = excess / (1.0 + excess),
                   .rr = rr.value(),
                   .pe = pe.value(),
                   .p0 = rr.context().p0()};
}

PafResult paf_from_smd(SmdValue d, OutcomeContext context, ExposurePrevalence pe) {
  const SmdValue magnitude(std::fabs(d.value()));
  PafResult result = paf_from_rr(or_to_rr(smd_to_or(magnitude), context), pe);
  result.d = magnitude.value();
  return result;
}

PafGrid paf_grid(const std::vector<SmdValue>& ds, const std::vector<OutcomeContext>& p0s,
                 const std::vector<ExposurePrevalence>& pes) {
  if (ds.empty() || p0s.empty() || pes.empty()) {
    throw UsageError("PAF grid needs at least one value on each of the d, p0 and pe axes");
  }
  PafGrid grid;
  for (const auto& pe : pes) grid.pes.push_back(pe.value());
  for (const auto& d : ds) {
    for (const auto& p0 : p0s) {
      PafGridRow row{.d = std::fabs(d.value()), .p0 = p0.p0(), .cells = {}};
      for (const auto& pe : pes) row.cells.push_back(paf_from_smd(d, p0, pe));
      grid.rows.push_back(std::move(row));
    }
  }
  return grid;
}

PafGrid default_paf_grid() {
  std::vector<SmdValue> ds;
  for (double d : {0.01, 0.2, 0.5, 0.8, 1.2, 2.0}) ds.emplace_back(d);
  const std::vector<OutcomeContext> p0s{OutcomeContext(0.01), OutcomeContext(0.2)};
  const std::vector<ExposurePrevalence> pes{ExposurePrevalence(0.01), ExposurePrevalence(0.2),
                                            ExposurePrevalence(0.5)};
  return paf_grid(ds, p0s, pes);
}

}  // namespace effectplan
