#include "core/report.hpp"

#include <cmath>
#include <cstdio>

namespace cpneq {

namespace {

bool needs_csv_quotes(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

void append_csv_cell(std::string& out, const std::string& cell) {
  if (!needs_csv_quotes(cell)) {
    out += cell;
    return;
  }
  out += '"';
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

bool is_plain_number(const std::string& cell) {
  return !cell.empty() && cell != "nan" && cell != "-nan" && cell != "inf" &&
         cell != "-inf";
}

}  // namespace

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (const auto& [k, v] : t.meta) {
    out += "# ";
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  for (std::size_t i = 0; i < t.headers.size(); ++i) {
    if (i) out += ',';
    append_csv_cell(out, t.headers[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      append_csv_cell(out, row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  std::string out = "{\n  \"meta\": {";
  for (std::size_t i = 0; i < t.meta.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    append_json_string(out, t.meta[i].first);
    out += ": ";
    append_json_string(out, t.meta[i].second);
  }
  out += t.meta.empty() ? "},\n" : "\n  },\n";
  out += "  \"columns\": [";
  for (std::size_t i = 0; i < t.headers.size(); ++i) {
    if (i) out += ", ";
    append_json_string(out, t.headers[i]);
  }
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",\n    " : "\n    ";
    out += '[';
    const auto& row = t.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ", ";
      const bool numeric = i < t.kinds.size() && t.kinds[i] == ColKind::Number;
      if (numeric) {
        if (is_plain_number(row[i]))
          out += row[i];
        else
          out += "null";
      } else {
        append_json_string(out, row[i]);
      }
    }
    out += ']';
  }
  out += t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace cpneq
