#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace riskbounds {

/// Rounds half away from zero to `digits` decimals.
double round_half_away(double x, int digits);

/// Fixed-point text after round_half_away; never prints "-0.00".
std::string format_fixed(double x, int digits);

enum class TableFormat { csv, tsv, pretty };

TableFormat parse_table_format(std::string_view name);

/// A header plus rows of already-formatted cells.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void write(std::ostream& os, TableFormat format) const;
};

}  // namespace riskbounds
