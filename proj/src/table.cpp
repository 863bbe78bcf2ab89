#include "effectplan/table.hpp"

#include <algorithm>
#include <sstream>

#include "effectplan/errors.hpp"
#include "effectplan/format.hpp"

namespace effectplan {

std::optional<TableFormat> parse_table_format(std::string_view name) noexcept {
  if (name == "text") return TableFormat::AlignedText;
  if (name == "csv") return TableFormat::Csv;
  if (name == "markdown" || name == "md") return TableFormat::Markdown;
  return std::nullopt;
}

namespace {

bool looks_numeric(const std::string& cell) {
  return cell.empty() || cell == "-" || parse_double(cell).has_value();
}

std::string render_text(const Table& table) {
  const std::size_t cols = table.header.size();
  std::vector<std::size_t> width(cols, 0);
  std::vector<bool> right(cols, !table.rows.empty());
  for (std::size_t c = 0; c < cols; ++c) {
    width[c] = table.header[c].size();
    for (const auto& row : table.rows) {
      width[c] = std::max(width[c], row[c].size());
      if (!looks_numeric(row[c])) right[c] = false;
    }
  }

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cols; ++c) {
      if (c > 0) line += "  ";
      const std::string pad(width[c] - cells[c].size(), ' ');
      line += right[c] ? pad + cells[c] : cells[c] + pad;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };

  emit(table.header);
  std::vector<std::string> rule;
  for (std::size_t c = 0; c < cols; ++c) rule.emplace_back(width[c], '-');
  emit(rule);
  for (const auto& row : table.rows) emit(row);
  return out.str();
}

std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char ch : cell) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

std::string render_csv(const Table& table) {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out << ',';
      out << csv_cell(cells[c]);
    }
    out << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  return out.str();
}

std::string md_cell(const std::string& cell) {
  std::string escaped;
  for (char ch : cell) {
    if (ch == '|') escaped += '\\';
    escaped += ch == '\n' ? ' ' : ch;
  }
  return escaped;
}

std::string render_markdown(const Table& table) {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    out << '|';
    for (const auto& cell : cells) out << ' ' << md_cell(cell) << " |";
    out << '\n';
  };
  emit(table.header);
  out << '|';
  for (std::size_t c = 0; c < table.header.size(); ++c) out << " --- |";
  out << '\n';
  for (const auto& row : table.rows) emit(row);
  return out.str();
}

}  // namespace

std::string render(const Table& table, TableFormat format) {
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw UsageError("table row width differs from header");
  }
  switch (format) {
    case TableFormat::AlignedText: return render_text(table);
    case TableFormat::Csv: return render_csv(table);
    case TableFormat::Markdown: return render_markdown(table);
  }
  return {};
}

Table parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field_started) throw DomainError("CSV: quote inside an unquoted field");
        in_quotes = true;
        field_started = true;
        break;
      case ',': end_field(); break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_record();
        break;
      case '\n': end_record(); break;
      default:
        field += ch;
        field_started = true;
    }
  }
  if (in_quotes) throw DomainError("CSV: unterminated quoted field");
  if (field_started || !record.empty()) end_record();

  if (records.empty()) throw DomainError("CSV: no header record");
  Table table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw DomainError("CSV: record " + std::to_string(r + 1) + " has " +
                        std::to_string(records[r].size()) + " fields, header has " +
                        std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

}  // namespace effectplan
