#include "riskbounds/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "riskbounds/types.hpp"

namespace riskbounds {

double round_half_away(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  // Nudge by a few ulps so values like 0.125 stored as 0.12499999... still round up.
  const double scaled = std::fabs(x) * scale;
  const double r = std::floor(scaled + 0.5 + 4.0 * std::numeric_limits<double>::epsilon() * scaled);
  return std::copysign(r / scale, x);
}

std::string format_fixed(double x, int digits) {
  double r = round_half_away(x, digits);
  if (r == 0.0) r = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, r);
  return buf;
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "tsv") return TableFormat::tsv;
  if (name == "pretty") return TableFormat::pretty;
  throw InputError("unknown format '" + std::string(name) + "' (csv, tsv, pretty)");
}

void TextTable::write(std::ostream& os, TableFormat format) const {
  if (format != TableFormat::pretty) {
    const char sep = format == TableFormat::csv ? ',' : '\t';
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? std::string(1, sep) : "") << cells[i];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return;
  }

  std::vector<std::size_t> width(header.size(), 0);
  const auto measure = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  };
  measure(header);
  for (const auto& r : rows) measure(r);
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << "  ";
      const auto pad = i < width.size() ? width[i] - std::min(width[i], cells[i].size()) : 0;
      os << std::string(pad, ' ') << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace riskbounds
