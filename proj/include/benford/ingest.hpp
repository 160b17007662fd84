#pragma once

// Numeric column ingestion from CSV (RFC 4180 quoting, header row required,
// records starting with '#' ignored) or JSON lines. Cells are parsed as plain decimal reals with optional
// exponent; parsing never consults the locale.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "benford/error.hpp"

namespace benford {

enum class InputFormat { Csv, Jsonl };

struct DatasetColumn {
  std::string name;
  std::vector<double> values;  // finite only; zeros kept
  std::size_t skipped = 0;     // empty, non-numeric, NaN or infinite cells
};

// Parses one decimal cell. Returns nullopt for anything that is not a
// complete finite number.
inline std::optional<double> parse_decimal(std::string_view cell) {
  const auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
  while (!cell.empty() && is_space(cell.front())) cell.remove_prefix(1);
  while (!cell.empty() && is_space(cell.back())) cell.remove_suffix(1);
  if (!cell.empty() && cell.front() == '+') {
    cell.remove_prefix(1);
    if (!cell.empty() && cell.front() == '-') return std::nullopt;
  }
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v, std::chars_format::general);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

namespace detail {

// Reads one CSV record; returns false at end of input. Quoted fields may
// contain commas, doubled quotes and line breaks.
inline bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool any = false;
  char ch = 0;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch == '\r') {
      if (in.peek() == '\n') in.get(ch);
      break;
    } else {
      field.push_back(ch);
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

inline bool is_comment(const std::vector<std::string>& row) {
  return !row.empty() && !row[0].empty() && row[0][0] == '#';
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

// selector: a header name, or a 0-based column index when no header
// matches and the selector is all digits. Empty selects the first column.
inline DatasetColumn ingest_csv(std::istream& in, const std::string& selector) {
  std::vector<std::string> row;
  bool have_header = false;
  while ((have_header = detail::read_csv_record(in, row)) && detail::is_comment(row)) {
  }
  if (!have_header) detail::fail(ErrorKind::NoParseableValues, "csv input is empty");
  std::size_t col = 0;
  if (!selector.empty()) {
    const auto it = std::find(row.begin(), row.end(), selector);
    if (it != row.end()) {
      col = static_cast<std::size_t>(it - row.begin());
    } else if (detail::all_digits(selector) && std::stoul(selector) < row.size()) {
      col = std::stoul(selector);
    } else {
      detail::fail(ErrorKind::UnknownColumn, "unknown column '" + selector + "'");
    }
  }
  DatasetColumn out;
  out.name = row[col];
  while (detail::read_csv_record(in, row)) {
    if ((row.size() == 1 && row[0].empty()) || detail::is_comment(row)) continue;
    const auto v = col < row.size() ? parse_decimal(row[col]) : std::nullopt;
    if (v) {
      out.values.push_back(*v);
    } else {
      ++out.skipped;
    }
  }
  if (out.values.empty()) {
    detail::fail(ErrorKind::NoParseableValues, "column '" + out.name + "' has no parseable values");
  }
  return out;
}

// Each line is a JSON object (field chosen by name), a JSON array (field
// chosen by index) or a bare number. Numeric strings are accepted.
inline DatasetColumn ingest_jsonl(std::istream& in, const std::string& selector) {
  DatasetColumn out;
  out.name = selector.empty() ? "value" : selector;
  bool field_seen = selector.empty();
  std::string line;
  const auto take = [&](const nlohmann::json& cell) {
    std::optional<double> v;
    if (cell.is_number()) {
      v = cell.get<double>();
      if (!std::isfinite(*v)) v.reset();
    } else if (cell.is_string()) {
      v = parse_decimal(cell.get<std::string>());
    }
    if (v) {
      out.values.push_back(*v);
    } else {
      ++out.skipped;
    }
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded()) {
      ++out.skipped;
      continue;
    }
    if (rec.is_object()) {
      if (selector.empty()) {
        if (rec.size() == 1) {
          take(rec.begin().value());
        } else {
          ++out.skipped;
        }
      } else if (rec.contains(selector)) {
        field_seen = true;
        take(rec.at(selector));
      } else {
        ++out.skipped;
      }
    } else if (rec.is_array()) {
      if (!selector.empty() && !detail::all_digits(selector)) {
        ++out.skipped;
        continue;
      }
      const std::size_t idx = selector.empty() ? 0 : std::stoul(selector);
      if (idx < rec.size()) {
        field_seen = true;
        take(rec[idx]);
      } else {
        ++out.skipped;
      }
    } else {
      take(rec);
      field_seen = field_seen || selector.empty();
    }
  }
  if (!field_seen) detail::fail(ErrorKind::UnknownColumn, "unknown column '" + selector + "'");
  if (out.values.empty()) {
    detail::fail(ErrorKind::NoParseableValues, "field '" + out.name + "' has no parseable values");
  }
  return out;
}

inline DatasetColumn ingest(const std::string& path, const std::string& selector, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::fail(ErrorKind::MissingFile, "cannot open '" + path + "'");
  return format == InputFormat::Csv ? ingest_csv(in, selector) : ingest_jsonl(in, selector);
}

}  // namespace benford
