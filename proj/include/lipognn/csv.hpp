// SPDX-FileCopyrightText: 2026 lipognn contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <string>
#include <vector>

namespace lipognn {

// RFC-4180 CSV reader: quoted fields may contain commas, doubled quotes
// and line breaks; both LF and CRLF records are accepted. Returns one
// vector of fields per record; a trailing newline does not produce an
// empty record.
inline std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;  // true once the current record has content

  auto end_field = [&]() {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&]() {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    field_started = false;
  };

  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;
        break;
      case '\r':
        break;  // CRLF: the LF that follows ends the record
      case '\n':
        if (field_started || !field.empty() || !row.empty()) end_row();
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

// Quote a field for CSV output when it contains a delimiter, quote, or
// line break; inner quotes are doubled per RFC 4180.
inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace lipognn
