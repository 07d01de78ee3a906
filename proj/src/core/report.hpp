#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cpneq {

enum class ColKind { Number, Text };

// Rendered-cell table: every number is already fixed to 12 significant
// digits, so the same table serializes byte-identically on every run.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;  // '#' key=value
  std::vector<std::string> headers;                       // unit-suffixed
  std::vector<ColKind> kinds;
  std::vector<std::vector<std::string>> rows;
};

std::string format_sig(double v);  // %.12g; nan stays "nan"

std::string to_csv(const Table& t);

// Same content as an object {meta, columns, rows}; "nan" number cells
// become null, text cells stay strings.
std::string to_json(const Table& t);

}  // namespace cpneq
