#include "effectplan/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"
#include "effectplan/impact.hpp"
#include "effectplan/measures.hpp"
#include "effectplan/plausibility.hpp"
#include "effectplan/power.hpp"
#include "effectplan/report.hpp"
#include "effectplan/scenario.hpp"
#include "effectplan/table.hpp"
#include "effectplan/tables.hpp"

namespace effectplan {

namespace {

constexpr double kDefaultPes[] = {0.01, 0.20, 0.50};

/// Bad command-line input (exit status 1).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw flag values; numbers are parsed here rather than by CLI11 so parsing
// is strict and locale independent.
struct Flags {
  std::string from = "smd";
  std::string to = "all";
  std::optional<std::string> value, p0, alpha, power, n, seed, reps, workers;
  std::vector<std::string> pe;
  std::optional<std::string> intensity, targeting, proximity, mechanism;
  std::optional<std::string> per_unit, change;
  std::optional<std::string> scenario;
  std::string format = "text";
  std::string which;
};

double number(const std::optional<std::string>& text, const char* flag) {
  if (!text) throw ValidationError(std::string(flag) + ": required");
  const auto v = parse_double(*text);
  if (!v) throw ValidationError(std::string(flag) + ": not a finite number: '" + *text + "'");
  return *v;
}

double number_or(const std::optional<std::string>& text, const char* flag, double fallback) {
  return text ? number(text, flag) : fallback;
}

long long count(const std::optional<std::string>& text, const char* flag) {
  if (!text) throw ValidationError(std::string(flag) + ": required");
  const auto v = parse_count(*text);
  if (!v) throw ValidationError(std::string(flag) + ": not an integer: '" + *text + "'");
  return *v;
}

// Runs `fn` converting domain/config failures into validation errors: the
// values being built are user input, not computation results.
template <typename Fn>
auto validated(const char* flag, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw ValidationError(std::string(flag) + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ValidationError(std::string(flag) + ": " + e.what());
  }
}

Scale scale_flag(const std::string& text, const char* flag) {
  const auto s = parse_scale(text);
  if (!s) throw ValidationError(std::string(flag) + ": expected smd, r, or, rr or rd (got '" + text + "')");
  return *s;
}

std::optional<OutcomeContext> context(const Flags& f) {
  if (!f.p0) return std::nullopt;
  const double p0 = number(f.p0, "--p0");
  return validated("--p0", [&] { return OutcomeContext(p0); });
}

EffectQuantity effect(const Flags& f) {
  const Scale scale = scale_flag(f.from, "--from");
  const double v = number(f.value, "--value");
  const auto ctx = context(f);
  return validated("--value", [&] { return make_effect(scale, v, ctx); });
}

SmdValue as_smd(const EffectQuantity& q, const std::optional<OutcomeContext>& ctx) {
  return std::get<SmdValue>(convert(q, Scale::Smd, ctx));
}

TableFormat table_format(const Flags& f) {
  const auto fmt = parse_table_format(f.format);
  if (!fmt) throw ValidationError("--format: expected text, csv or markdown (got '" + f.format + "')");
  return *fmt;
}

StudyFlags study_flags(const Flags& f) {
  StudyFlags flags;
  auto parse = [](const std::optional<std::string>& text, auto parser, const char* flag,
                  const char* choices) -> decltype(parser(std::string_view{})) {
    if (!text) return std::nullopt;
    auto v = parser(*text);
    if (!v) throw ValidationError(std::string(flag) + ": expected " + choices + " (got '" + *text + "')");
    return v;
  };
  flags.intensity = parse(f.intensity, parse_intensity, "--intensity", "high, medium or low");
  flags.targeting = parse(f.targeting, parse_targeting, "--targeting", "universal or targeted");
  flags.proximity = parse(f.proximity, parse_proximity, "--proximity", "proximal or distal");
  flags.mechanism = parse(f.mechanism, parse_mechanism, "--mechanism", "direct or indirect");
  return flags;
}

void warn_if_extreme(SmdValue d, std::ostream& err) {
  if (std::fabs(d.value()) > kEmpiricalSmdLimit) {
    err << "warning: |d| = " << format_short(std::fabs(d.value()))
        << " is outside any empirical range of standardized effects\n";
  }
}

int display_decimals(Scale s) {
  switch (s) {
    case Scale::Smd: return 3;
    case Scale::RiskDifference: return kRiskDifferenceDecimals;
    default: return kRatioDecimals;
  }
}

Table value_table() { return Table{{"Item", "Value", "Exact"}, {}}; }

void add(Table& t, std::string item, std::string value, std::string exact = {}) {
  t.rows.push_back({std::move(item), std::move(value), std::move(exact)});
}

// --- subcommands -----------------------------------------------------------

void cmd_convert(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto q = effect(f);
  const auto ctx = context(f);
  std::vector<Scale> targets;
  if (f.to == "all") {
    for (Scale s : kAllScales) {
      if (!requires_context(s) || ctx || context_of(q)) targets.push_back(s);
    }
  } else {
    targets.push_back(scale_flag(f.to, "--to"));
  }
  const auto carried = context_of(q) ? context_of(q) : ctx;
  if (std::ranges::any_of(targets, requires_context) && !carried) {
    throw ValidationError("--p0: baseline risk is required to convert to " + f.to);
  }

  warn_if_extreme(as_smd(q, carried), err);
  Table t{{"Scale", "Value", "Exact"}, {}};
  for (Scale s : targets) {
    const double v = value_of(convert(q, s, carried));
    t.rows.push_back({std::string(scale_name(s)), format_fixed(v, display_decimals(s)), format_full(v)});
  }
  out << render(t, table_format(f));
}

std::vector<ExposurePrevalence> pe_list(const Flags& f) {
  std::vector<ExposurePrevalence> pes;
  if (f.pe.empty()) {
    for (double pe : kDefaultPes) pes.emplace_back(pe);
    return pes;
  }
  for (const auto& text : f.pe) {
    const double pe = number(text, "--pe");
    pes.push_back(validated("--pe", [&] { return ExposurePrevalence(pe); }));
  }
  return pes;
}

void cmd_paf(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto q = effect(f);
  const auto ctx = context_of(q) ? context_of(q) : context(f);
  if (!ctx) throw ValidationError("--p0: baseline risk is required for PAF");
  const auto pes = pe_list(f);

  Table t{{"Pe", "PAF", "Exact"}, {}};
  const bool risk_scale = scale_of(q) == Scale::RelativeRisk || scale_of(q) == Scale::RiskDifference;
  if (!risk_scale) warn_if_extreme(as_smd(q, ctx), err);
  for (const auto& pe : pes) {
    PafResult r{};
    if (risk_scale) {
      const auto rr = invert_for_comparability(convert(q, Scale::RelativeRisk, ctx));
      r = paf_from_rr(std::get<RelativeRiskValue>(rr), pe);
    } else {
      r = paf_from_smd(as_smd(q, ctx), *ctx, pe);
    }
    t.rows.push_back({format_short(pe.value()), format_fixed(r.paf, kPafDecimals), format_full(r.paf)});
  }
  out << render(t, table_format(f));
}

PowerSpec power_spec(const Flags& f) {
  PowerSpec spec{.alpha = number_or(f.alpha, "--alpha", 0.05),
                 .target_power = number_or(f.power, "--power", 0.80)};
  validated("--alpha/--power", [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

void cmd_power(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto q = effect(f);
  const auto ctx = context_of(q) ? context_of(q) : context(f);
  const PowerSpec spec = power_spec(f);
  const Scale source = scale_of(q);
  const bool proportions = source == Scale::RelativeRisk || source == Scale::RiskDifference;

  Table t = value_table();
  if (f.n) {
    const long long n = count(f.n, "--n");
    if (n < 2) throw ValidationError("--n: group size must be at least 2");
    double power;
    if (proportions) {
      const double p1 = exposed_risk(*ctx, std::get<RelativeRiskValue>(convert(q, Scale::RelativeRisk, ctx)));
      power = achieved_power_two_proportions(ctx->p0(), p1, n, n, spec.alpha);
    } else {
      power = achieved_power_smd(as_smd(q, ctx), n, spec.alpha);
    }
    add(t, "n per group", format_count(n));
    add(t, "achieved power", format_fixed(power, 4), format_full(power));
    out << render(t, table_format(f));
    return;
  }

  SampleSizeResult r{};
  if (proportions) {
    r = required_n_two_proportions(*ctx, std::get<RelativeRiskValue>(convert(q, Scale::RelativeRisk, ctx)), spec);
  } else {
    const SmdValue d = as_smd(q, ctx);
    warn_if_extreme(d, err);
    r = required_n_smd(d, spec);
  }
  if (r.floored) {
    err << "warning: required n raised to the small-sample floor of " << kMinGroupSize
        << " per group\n";
  }
  add(t, "test", proportions ? "two-proportion z-test" : "two-sample z-test (SMD)");
  add(t, "n per group", format_count(r.n_per_group));
  add(t, "n total", format_count(r.n_total));
  add(t, "achieved power", format_fixed(r.achieved_power_at_n, 4), format_full(r.achieved_power_at_n));
  out << render(t, table_format(f));
}

void cmd_mde(const Flags& f, std::ostream& out, std::ostream&) {
  const long long n = count(f.n, "--n");
  if (n < 2) throw ValidationError("--n: group size must be at least 2");
  const PowerSpec spec = power_spec(f);
  const auto ctx = context(f);
  const MdeResult mde = mde_smd(n, spec);

  Table t{{"Scale", "Value", "Exact"}, {}};
  const EffectQuantity d = SmdValue(mde.d_min);
  for (Scale s : kAllScales) {
    if (requires_context(s) && !ctx) continue;
    const double v = value_of(convert(d, s, ctx));
    t.rows.push_back({std::string(scale_name(s)), format_fixed(v, s == Scale::Smd ? 4 : display_decimals(s)),
                      format_full(v)});
  }
  out << render(t, table_format(f));
}

void cmd_simulate(const Flags& f, std::ostream& out, std::ostream&) {
  const auto q = effect(f);
  const auto ctx = context_of(q) ? context_of(q) : context(f);
  const long long n = count(f.n, "--n");
  if (n < 2) throw ValidationError("--n: group size must be at least 2");
  const double alpha = number_or(f.alpha, "--alpha", 0.05);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("--alpha: must lie strictly between 0 and 1");

  SimConfig sim;
  if (f.reps) sim.replications = count(f.reps, "--reps");
  if (sim.replications < 1) throw ValidationError("--reps: need at least 1 replication");
  if (f.seed) {
    const auto seed = count(f.seed, "--seed");
    if (seed < 0) throw ValidationError("--seed: must be non-negative");
    sim.seed = static_cast<std::uint64_t>(seed);
  }
  if (f.workers) {
    const auto w = count(f.workers, "--workers");
    if (w < 0) throw ValidationError("--workers: must be non-negative");
    sim.workers = static_cast<unsigned>(w);
  }

  const Scale source = scale_of(q);
  double simulated;
  double analytic;
  if (source == Scale::RelativeRisk || source == Scale::RiskDifference) {
    const auto rr = std::get<RelativeRiskValue>(convert(q, Scale::RelativeRisk, ctx));
    simulated = simulate_power_two_proportions(*ctx, rr, n, alpha, sim);
    analytic = achieved_power_two_proportions(ctx->p0(), rr.exposed_risk(), n, n, alpha);
  } else {
    const SmdValue d = as_smd(q, ctx);
    simulated = simulate_power_smd(d, n, alpha, sim);
    analytic = achieved_power_smd(d, n, alpha);
  }
  const double se = std::sqrt(simulated * (1.0 - simulated) / static_cast<double>(sim.replications));

  Table t = value_table();
  add(t, "simulated power", format_fixed(simulated, 4), format_full(simulated));
  add(t, "analytic power", format_fixed(analytic, 4), format_full(analytic));
  add(t, "monte carlo standard error", format_fixed(se, 4), format_full(se));
  add(t, "replications", format_count(sim.replications));
  add(t, "seed", std::to_string(sim.seed));
  out << render(t, table_format(f));
}

void cmd_assess(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto q = effect(f);
  const auto ctx = context_of(q) ? context_of(q) : context(f);
  const SmdValue d = as_smd(q, ctx);
  warn_if_extreme(d, err);
  const auto verdict = assess_plausibility(d, study_flags(f));

  Table t{{"Rule", "Level", "Rationale"}, {}};
  t.rows.push_back({"verdict", std::string(to_string(verdict.level)), ""});
  for (const auto& rule : verdict.triggered_rules) {
    t.rows.push_back({rule.id, std::string(to_string(rule.level)), rule.rationale + " [" + rule.basis + "]"});
  }
  t.rows.push_back({"note", "", std::string(kRuleTableNote)});
  out << render(t, table_format(f));
}

void cmd_attenuate(const Flags& f, std::ostream& out, std::ostream&) {
  const double per_unit = number(f.per_unit, "--per-unit");
  const double change = number(f.change, "--change");
  const SmdValue d = attenuate_indirect(SmdValue(per_unit), change);
  Table t = value_table();
  add(t, "expected SMD", format_fixed(d.value(), 3), format_full(d.value()));
  add(t, "magnitude", std::string(magnitude_name(classify_magnitude(d))));
  out << render(t, table_format(f));
}

void cmd_table(const Flags& f, std::ostream& out, std::ostream&) {
  const auto kind = parse_table_kind(f.which);
  if (!kind) throw ValidationError("table: expected table2, figure1 or catalog (got '" + f.which + "')");
  out << emit_table(*kind, table_format(f));
}

void cmd_report(const Flags& f, std::ostream& out, std::ostream& err) {
  ScenarioOverrides overrides;
  auto set = [&](const char* key, const std::optional<std::string>& v) {
    if (v) overrides[key] = *v;
  };
  if (f.value) {
    overrides["effect_scale"] = f.from;
    overrides["effect_value"] = *f.value;
  }
  set("p0", f.p0);
  if (!f.pe.empty()) overrides["pe"] = f.pe.back();
  set("alpha", f.alpha);
  set("target_power", f.power);
  set("n_per_group", f.n);
  set("intensity", f.intensity);
  set("targeting", f.targeting);
  set("proximity", f.proximity);
  set("mechanism", f.mechanism);

  Scenario scenario;
  if (f.scenario) {
    std::ifstream in(*f.scenario);
    if (!in) throw ValidationError("--scenario: cannot open '" + *f.scenario + "'");
    scenario = parse_scenario(in, overrides);
  } else {
    std::istringstream empty;
    scenario = parse_scenario(empty, overrides);
  }
  const TableFormat format = table_format(f);

  const Report report = run_report(scenario);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  out << render(report_table(report), format);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effect-size conversion, population impact and power planning"};
  app.require_subcommand(1);
  Flags f;

  auto effect_flags = [&](CLI::App* sub) {
    sub->add_option("--from", f.from, "Scale of --value: smd, r, or, rr, rd")->capture_default_str();
    sub->add_option("--value", f.value, "Effect value on the --from scale");
    sub->add_option("--p0", f.p0, "Baseline risk in the unexposed group");
  };
  auto power_flags = [&](CLI::App* sub) {
    sub->add_option("--alpha", f.alpha, "Two-sided significance level (default 0.05)");
    sub->add_option("--power", f.power, "Target power (default 0.80)");
  };
  auto study_flag_options = [&](CLI::App* sub) {
    sub->add_option("--intensity", f.intensity, "high, medium or low (touch)");
    sub->add_option("--targeting", f.targeting, "universal or targeted");
    sub->add_option("--proximity", f.proximity, "proximal or distal outcome");
    sub->add_option("--mechanism", f.mechanism, "direct or indirect");
  };
  auto format_flag = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "text, csv or markdown")->capture_default_str();
  };

  auto* convert = app.add_subcommand("convert", "Convert an effect between scales");
  effect_flags(convert);
  convert->add_option("--to", f.to, "Target scale or 'all'")->capture_default_str();
  format_flag(convert);

  auto* paf = app.add_subcommand("paf", "Population attributable fraction");
  effect_flags(paf);
  paf->add_option("--pe", f.pe, "Proportion exposed (comma-separated list allowed)")->delimiter(',');
  format_flag(paf);

  auto* power = app.add_subcommand("power", "Required sample size, or power at --n");
  effect_flags(power);
  power_flags(power);
  power->add_option("--n", f.n, "Group size; reports achieved power instead of required n");
  format_flag(power);

  auto* mde = app.add_subcommand("mde", "Minimum detectable effect for a group size");
  mde->add_option("--n", f.n, "Group size")->required();
  mde->add_option("--p0", f.p0, "Baseline risk, to re-express on RR/RD scales");
  power_flags(mde);
  format_flag(mde);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo power of the two-group test");
  effect_flags(simulate);
  simulate->add_option("--n", f.n, "Group size")->required();
  simulate->add_option("--alpha", f.alpha, "Two-sided significance level (default 0.05)");
  simulate->add_option("--reps", f.reps, "Replications (default 100000)");
  simulate->add_option("--seed", f.seed, "Random seed (default 42)");
  simulate->add_option("--workers", f.workers, "Worker threads (0 = all cores); does not change results");
  format_flag(simulate);

  auto* assess = app.add_subcommand("assess", "Plausibility of an assumed effect size");
  effect_flags(assess);
  study_flag_options(assess);
  format_flag(assess);

  auto* attenuate = app.add_subcommand("attenuate", "Expected effect through an intermediate mechanism");
  attenuate->add_option("--per-unit", f.per_unit, "SMD per unit of the mechanism")->required();
  attenuate->add_option("--change", f.change, "Units of mechanism the intervention induces")->required();
  format_flag(attenuate);

  auto* table = app.add_subcommand("table", "Reference tables");
  table->add_option("which", f.which, "table2, figure1 or catalog")->required();
  format_flag(table);

  auto* report = app.add_subcommand("report", "Full planning report for a scenario");
  report->add_option("--scenario", f.scenario, "Scenario file (key = value lines)");
  effect_flags(report);
  power_flags(report);
  report->add_option("--pe", f.pe, "Proportion exposed");
  report->add_option("--n", f.n, "Group size for the MDE");
  study_flag_options(report);
  format_flag(report);

  std::vector<const char*> argv{"effectplan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*convert) cmd_convert(f, out, err);
    else if (*paf) cmd_paf(f, out, err);
    else if (*power) cmd_power(f, out, err);
    else if (*mde) cmd_mde(f, out, err);
    else if (*simulate) cmd_simulate(f, out, err);
    else if (*assess) cmd_assess(f, out, err);
    else if (*attenuate) cmd_attenuate(f, out, err);
    else if (*table) cmd_table(f, out, err);
    else if (*report) cmd_report(f, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ScenarioError& e) {
    for (const auto& issue : e.issues()) err << "error: " << issue.to_string() << '\n';
    return kExitValidation;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace effectplan
