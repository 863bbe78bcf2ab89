#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace effectplan {

enum class TableFormat { AlignedText, Csv, Markdown };

std::optional<TableFormat> parse_table_format(std::string_view name) noexcept;

/// A rectangular table of pre-formatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

/// Aligned text right-aligns columns whose body cells are all numeric.
/// CSV quotes cells containing separators, quotes or line breaks (RFC 4180)
/// and ends every record with '\n'. Markdown escapes '|'.
std::string render(const Table& table, TableFormat format);

/// Parses CSV produced by `render` (or any RFC 4180 input; CRLF accepted).
/// The first record is the header. Throws DomainError on malformed quoting
/// or ragged rows.
Table parse_csv(std::string_view text);

}  // namespace effectplan
