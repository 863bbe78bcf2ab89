#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "effectplan/table.hpp"

namespace effectplan {

enum class TableKind { Correspondence, PafGridTable, Catalog };

/// "table2" / "correspondence", "figure1" / "paf", "catalog".
std::optional<TableKind> parse_table_kind(std::string_view name) noexcept;

/// Display precision per column: r, OR, RR 2 decimals; RD 3 decimals; PAF 2
/// decimals; SMD benchmarks 3 decimals.
inline constexpr int kRatioDecimals = 2;
inline constexpr int kRiskDifferenceDecimals = 3;
inline constexpr int kPafDecimals = 2;
inline constexpr int kBenchmarkDecimals = 3;

/// Builds the table. With `full_precision` the correspondence and PAF tables
/// gain shortest round-trip columns, and repeated block labels are filled in
/// rather than blanked.
Table build_table(TableKind kind, bool full_precision);

/// CSV output always carries full precision.
std::string emit_table(TableKind kind, TableFormat format);

}  // namespace effectplan
