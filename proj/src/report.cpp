#include "effectplan/report.hpp"

#include <algorithm>
#include <cmath>

#include "effectplan/format.hpp"
#include "effectplan/tables.hpp"

namespace effectplan {

namespace {

constexpr int kSmdDecimals = 3;
constexpr int kPowerDecimals = 4;
constexpr int kMdeDecimals = 4;

template <typename Fn>
auto in_stage(const char* name, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

int decimals_for(Scale s) {
  switch (s) {
    case Scale::Smd: return kSmdDecimals;
    case Scale::RiskDifference: return kRiskDifferenceDecimals;
    default: return kRatioDecimals;
  }
}

}  // namespace

Report run_report(const Scenario& scenario) {
  Report report{.scenario = scenario};
  const auto& p0 = scenario.p0;

  in_stage("measures", [&] {
    const SmdValue d = std::get<SmdValue>(convert(scenario.effect, Scale::Smd, p0));
    report.smd = d.value();
    report.magnitude = classify_magnitude(d);
    for (Scale s : kAllScales) {
      if (requires_context(s) && !p0) {
        report.scales.push_back({s, std::nullopt});
      } else {
        report.scales.push_back({s, value_of(convert(scenario.effect, s, p0))});
      }
    }
    if (std::fabs(d.value()) > kEmpiricalSmdLimit) {
      report.warnings.push_back("|d| = " + format_short(std::fabs(d.value())) +
                                " is outside any empirical range of standardized effects");
    }
  });

  const SmdValue d(report.smd);
  const bool null_effect = report.smd == 0.0;

  in_stage("impact", [&] {
    if (!p0) return;
    std::vector<double> pes(std::begin(kReportPeSweep), std::end(kReportPeSweep));
    if (scenario.pe) pes.push_back(scenario.pe->value());
    std::sort(pes.begin(), pes.end());
    pes.erase(std::unique(pes.begin(), pes.end()), pes.end());
    for (double pe : pes) report.paf_sweep.push_back(paf_from_smd(d, *p0, ExposurePrevalence(pe)));
  });

  const PowerSpec spec{.alpha = scenario.alpha, .target_power = scenario.target_power};
  in_stage("power", [&] {
    if (!null_effect) {
      report.n_smd = required_n_smd(d, spec);
      if (report.n_smd->floored) {
        report.warnings.push_back("required n raised to the small-sample floor of " +
                                  format_count(kMinGroupSize) + " per group");
      }
      if (p0) {
        const auto rr = std::get<RelativeRiskValue>(convert(scenario.effect, Scale::RelativeRisk, p0));
        if (rr.value() != 1.0) report.n_proportions = required_n_two_proportions(*p0, rr, spec);
      }
    }
    report.mde_n = scenario.n_per_group ? scenario.n_per_group
                   : report.n_smd       ? std::optional(report.n_smd->n_per_group)
                                        : std::nullopt;
    if (report.mde_n) report.mde = mde_smd(*report.mde_n, spec);
  });

  in_stage("plausibility", [&] {
    report.verdict = assess_plausibility(d, scenario.flags);
    if (scenario.mechanism_effect_per_unit) {
      report.attenuated_smd =
          attenuate_indirect(*scenario.mechanism_effect_per_unit, *scenario.mechanism_change).value();
    }
  });

  return report;
}

Table report_table(const Report& report) {
  Table t;
  t.header = {"Section", "Item", "Value", "Exact"};
  auto row = [&](std::string section, std::string item, std::string value, std::string exact = {}) {
    t.rows.push_back({std::move(section), std::move(item), std::move(value), std::move(exact)});
  };
  const Scenario& s = report.scenario;

  row("scenario", "label", s.label.empty() ? "(none)" : s.label);
  row("scenario", "effect",
      std::string(scale_name(scale_of(s.effect))) + " " + format_short(value_of(s.effect)),
      format_full(value_of(s.effect)));
  row("scenario", "p0", s.p0 ? format_short(s.p0->p0()) : "not given");
  row("scenario", "pe", s.pe ? format_short(s.pe->value()) : "not given");
  row("scenario", "alpha", format_short(s.alpha));
  row("scenario", "target power", format_short(s.target_power));

  for (const auto& entry : report.scales) {
    const std::string item(scale_title(entry.scale));
    if (entry.value) {
      row("effect", item, format_fixed(*entry.value, decimals_for(entry.scale)),
          format_full(*entry.value));
    } else {
      row("effect", item, "not computable: p0 not given");
    }
  }
  row("effect", "magnitude", std::string(magnitude_name(report.magnitude)));

  if (report.paf_sweep.empty()) {
    row("impact", "PAF", "not computable: p0 not given");
  } else {
    for (const auto& paf : report.paf_sweep) {
      row("impact", "PAF (Pe=" + format_fixed(paf.pe, 2) + ")", format_fixed(paf.paf, kPafDecimals),
          format_full(paf.paf));
    }
  }

  if (report.n_smd) {
    const auto& n = *report.n_smd;
    row("power", "required n per group (SMD)", format_count(n.n_per_group));
    row("power", "required n total (SMD)", format_count(n.n_total));
    row("power", "achieved power at n (SMD)", format_fixed(n.achieved_power_at_n, kPowerDecimals),
        format_full(n.achieved_power_at_n));
  } else {
    row("power", "required n per group (SMD)", "not computable for null effect");
  }
  if (report.n_proportions) {
    const auto& n = *report.n_proportions;
    row("power", "required n per group (two proportions)", format_count(n.n_per_group));
    row("power", "achieved power at n (two proportions)",
        format_fixed(n.achieved_power_at_n, kPowerDecimals), format_full(n.achieved_power_at_n));
  }
  if (report.mde) {
    row("power", "MDE (SMD) at n = " + format_count(*report.mde_n) + " per group",
        format_fixed(report.mde->d_min, kMdeDecimals), format_full(report.mde->d_min));
  } else {
    row("power", "MDE (SMD)", "not computable: no group size");
  }

  row("plausibility", "verdict", std::string(to_string(report.verdict.level)));
  for (const auto& rule : report.verdict.triggered_rules) {
    row("plausibility", rule.id, std::string(to_string(rule.level)), rule.rationale + " [" + rule.basis + "]");
  }
  row("plausibility", "note", std::string(kRuleTableNote));

  if (report.attenuated_smd) {
    row("mechanism", "expected SMD via mechanism", format_fixed(*report.attenuated_smd, kSmdDecimals),
        format_full(*report.attenuated_smd));
  }
  for (const auto& w : report.warnings) row("warning", "warning", w);
  return t;
}

}  // namespace effectplan
