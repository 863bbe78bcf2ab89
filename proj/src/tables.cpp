#include "effectplan/tables.hpp"

#include "effectplan/format.hpp"
#include "effectplan/impact.hpp"
#include "effectplan/measures.hpp"
#include "effectplan/plausibility.hpp"

namespace effectplan {

std::optional<TableKind> parse_table_kind(std::string_view name) noexcept {
  if (name == "table2" || name == "correspondence") return TableKind::Correspondence;
  if (name == "figure1" || name == "paf") return TableKind::PafGridTable;
  if (name == "catalog") return TableKind::Catalog;
  return std::nullopt;
}

namespace {

Table correspondence_table(bool full) {
  Table t;
  t.header = {"Interpretation", "SMD",          "r",            "OR",
              "RR (P0=0.01)",   "RR (P0=0.20)", "RD (P0=0.01)", "RD (P0=0.20)"};
  if (full) {
    for (const char* h : {"r exact", "OR exact", "RR (P0=0.01) exact", "RR (P0=0.20) exact",
                          "RD (P0=0.01) exact", "RD (P0=0.20) exact"}) {
      t.header.emplace_back(h);
    }
  }

  std::optional<MagnitudeLabel> previous;
  for (const auto& row : correspondence_grid()) {
    const bool first_of_class = previous != row.label;
    previous = row.label;
    std::vector<std::string> cells{
        first_of_class ? std::string(magnitude_name(row.label)) : std::string("-"),
        row.d_text,
        format_fixed(row.r, kRatioDecimals),
        format_fixed(row.odds_ratio, kRatioDecimals),
        format_fixed(row.rr_rare, kRatioDecimals),
        format_fixed(row.rr_common, kRatioDecimals),
        format_fixed(row.rd_rare, kRiskDifferenceDecimals),
        format_fixed(row.rd_common, kRiskDifferenceDecimals),
    };
    if (full) {
      for (double v : {row.r, row.odds_ratio, row.rr_rare, row.rr_common, row.rd_rare,
                       row.rd_common}) {
        cells.push_back(format_full(v));
      }
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table paf_table(bool full) {
  const PafGrid grid = default_paf_grid();
  Table t;
  t.header = {"Interpretation", "SMD", "P0"};
  for (double pe : grid.pes) t.header.push_back("PAF (Pe=" + format_fixed(pe, 2) + ")");
  if (full) {
    for (double pe : grid.pes) t.header.push_back("PAF (Pe=" + format_fixed(pe, 2) + ") exact");
  }

  std::optional<double> previous_d;
  for (const auto& row : grid.rows) {
    const bool first_of_block = previous_d != row.d;
    previous_d = row.d;
    const bool show = full || first_of_block;
    std::vector<std::string> cells{
        show ? std::string(magnitude_name(classify_magnitude(SmdValue(row.d)))) : std::string(),
        show ? format_full(row.d) : std::string(),
        format_full(row.p0),
    };
    for (const auto& cell : row.cells) cells.push_back(format_fixed(cell.paf, kPafDecimals));
    if (full) {
      for (const auto& cell : row.cells) cells.push_back(format_full(cell.paf));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table catalog_table() {
  Table t;
  t.header = {"Intervention", "Intervention features", "Target population", "Intensity",
              "Targeting",    "Largest SMD",           "Outcome",           "Source"};
  for (const auto& b : benchmark_catalog()) {
    t.rows.push_back({b.name, b.features, b.target_population, std::string(to_string(b.intensity)),
                      std::string(to_string(b.targeting)),
                      format_fixed(b.largest_smd.value(), kBenchmarkDecimals), b.outcome,
                      b.source});
  }
  return t;
}

}  // namespace

Table build_table(TableKind kind, bool full_precision) {
  switch (kind) {
    case TableKind::Correspondence: return correspondence_table(full_precision);
    case TableKind::PafGridTable: return paf_table(full_precision);
    case TableKind::Catalog: return catalog_table();
  }
  return {};
}

std::string emit_table(TableKind kind, TableFormat format) {
  return render(build_table(kind, format == TableFormat::Csv), format);
}

}  // namespace effectplan
