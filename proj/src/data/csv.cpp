#include <charconv>
#include <cmath>
#include <unordered_set>

#include "kpiforge/data/dataset.hpp"
#include "kpiforge/error.hpp"

namespace kpiforge::data {

namespace {

using Record = std::vector<std::string>;

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::malformed_csv, "CSV line " + std::to_string(line) + ": " + what);
}

// Splits the input into records. Quoted fields may span lines.
std::vector<Record> split_records(std::string_view in) {
  std::vector<Record> records;
  Record record;
  std::string field;
  bool quoted = false;
  std::vector<bool> blank;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = in.size();

  auto end_record = [&] {
    blank.push_back(record.empty() && field.empty() && !quoted);
    quoted = false;
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
  };

  while (i < n) {
    if (in[i] == '"' ) {
      if (!field.empty()) malformed(line, "quote inside an unquoted field");
      quoted = true;
      ++i;
      bool closed = false;
      while (i < n) {
        const char ch = in[i];
        if (ch == '"') {
          if (i + 1 < n && in[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        if (ch == '\n') ++line;
        field.push_back(ch);
        ++i;
      }
      if (!closed) malformed(line, "unterminated quoted field");
      if (i < n && in[i] != ',' && in[i] != '\n' && in[i] != '\r') {
        malformed(line, "unexpected character after closing quote");
      }
      continue;
    }
    const char ch = in[i];
    if (ch == ',') {
      record.push_back(std::move(field));
      field.clear();
      quoted = false;
      ++i;
    } else if (ch == '\r' || ch == '\n') {
      end_record();
      i += (ch == '\r' && i + 1 < n && in[i + 1] == '\n') ? 2 : 1;
      ++line;
    } else {
      field.push_back(ch);
      ++i;
    }
  }
  // A final line without a terminator.
  if (!field.empty() || !record.empty() || quoted) end_record();

  // Blank lines at the end of the file carry no data.
  while (!records.empty() && blank.back()) {
    records.pop_back();
    blank.pop_back();
  }
  return records;
}

std::optional<double> parse_real(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return std::nullopt;
  const auto last = text.find_last_not_of(" \t");
  text = text.substr(first, last - first + 1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

bool needs_quotes(std::string_view s) {
  if (s.empty()) return true;
  if (s.find_first_of(",\"\r\n") != std::string_view::npos) return true;
  return s.front() == ' ' || s.front() == '\t' || s.back() == ' ' || s.back() == '\t';
}

void append_field(std::string& out, std::string_view s) {
  if (!needs_quotes(s)) {
    out.append(s);
    return;
  }
  out.push_back('"');
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
}

}  // namespace

Dataset load_csv(std::string_view bytes, std::string name) {
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  if (bytes.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw Error(ErrorCode::empty_file, "CSV input is empty");
  }

  auto records = split_records(bytes);
  const Record& header = records.front();
  std::unordered_set<std::string> seen;
  for (const auto& h : header) {
    if (h.empty()) malformed(1, "empty column name in header");
    if (!seen.insert(h).second) malformed(1, "duplicate column name '" + h + "'");
  }
  const std::size_t width = header.size();
  const std::size_t rows = records.size() - 1;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      malformed(r + 1, "expected " + std::to_string(width) + " fields, found " +
                           std::to_string(records[r].size()));
    }
  }

  std::vector<Column> columns;
  columns.reserve(width);
  for (std::size_t c = 0; c < width; ++c) {
    NumericCells numeric(rows);
    bool is_numeric = true;
    for (std::size_t r = 0; r < rows && is_numeric; ++r) {
      const std::string& cell = records[r + 1][c];
      if (cell.empty()) continue;
      numeric[r] = parse_real(cell);
      is_numeric = numeric[r].has_value();
    }
    if (is_numeric) {
      columns.push_back(Column::numeric(header[c], std::move(numeric)));
      continue;
    }
    TextCells text(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      std::string& cell = records[r + 1][c];
      if (!cell.empty()) text[r] = std::move(cell);
    }
    columns.push_back(Column::categorical(header[c], std::move(text)));
  }
  return Dataset("", std::move(name), std::move(columns));
}

std::string to_csv(const Dataset& ds) {
  std::string out;
  const auto& cols = ds.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out.push_back(',');
    append_field(out, cols[c].name());
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out.push_back(',');
      if (cols.size() == 1 && cols[c].is_missing(r)) {
        out += "\"\"";  // keeps a lone missing cell from reading as a blank line
      } else if (const auto* num = cols[c].numeric_cells()) {
        if ((*num)[r]) out += format_number(*(*num)[r]);
      } else if (const auto& text = (*cols[c].text_cells())[r]) {
        append_field(out, *text);
      }
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace kpiforge::data
