#include "riskbounds/category_table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace riskbounds {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

Count parse_count(std::string_view field, std::size_t line_no, const char* column) {
  Count value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError(line_no, std::string("column '") + column + "' is not an integer: '" +
                                  std::string(field) + "'");
  }
  return value;
}

Count checked_mul(Count a, Count k) {
  Count out = 0;
  if (__builtin_mul_overflow(a, k, &out)) throw ValidationError("integer overflow expanding weights");
  return out;
}

}  // namespace

CategoryTable::CategoryTable(std::string name, std::vector<CategoryRow> rows, Provenance provenance)
    : name_(std::move(name)), rows_(std::move(rows)), provenance_(std::move(provenance)) {
  if (rows_.empty()) throw ValidationError("category table has no rows");
  if (provenance_.weight_factor < 1) throw ValidationError("weight factor must be >= 1");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    const auto where = "category " + std::to_string(r.category);
    if (r.category < 1) throw ValidationError(where + ": category index must be positive");
    if (r.total < 0 || r.events < 0) throw ValidationError(where + ": counts must be non-negative");
    if (r.total == 0) throw ValidationError(where + ": zero-total stratum");
    if (r.events > r.total) throw ValidationError(where + ": events exceed total");
    if (i > 0 && rows_[i - 1].category >= r.category)
      throw ValidationError(where + ": categories must be strictly increasing");
  }
  if (provenance_.source_rows.empty()) {
    provenance_.source_rows.resize(rows_.size());
    std::iota(provenance_.source_rows.begin(), provenance_.source_rows.end(), std::size_t{0});
  }
}

Count CategoryTable::total() const {
  return std::accumulate(rows_.begin(), rows_.end(), Count{0},
                         [](Count acc, const CategoryRow& r) { return acc + r.total; });
}

Count CategoryTable::events() const {
  return std::accumulate(rows_.begin(), rows_.end(), Count{0},
                         [](Count acc, const CategoryRow& r) { return acc + r.events; });
}

Eigen::VectorXd CategoryTable::categories() const {
  Eigen::VectorXd v(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) v[i] = static_cast<double>(rows_[i].category);
  return v;
}

Eigen::VectorXd CategoryTable::totals() const {
  Eigen::VectorXd v(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) v[i] = static_cast<double>(rows_[i].total);
  return v;
}

Eigen::VectorXd CategoryTable::event_counts() const {
  Eigen::VectorXd v(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) v[i] = static_cast<double>(rows_[i].events);
  return v;
}

Eigen::VectorXd CategoryTable::proportions() const {
  return event_counts().cwiseQuotient(totals());
}

CategoryTable parse_category_table(std::string_view text, std::string name) {
  std::vector<CategoryRow> rows;
  std::vector<std::size_t> source_lines;
  bool have_header = false;
  std::size_t line_no = 0;

  // Strip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split(line, ',');
    if (!have_header) {
      if (fields.size() != 3 || fields[0] != "category" || fields[1] != "total" || fields[2] != "events")
        throw ParseError(line_no, "expected header 'category,total,events'");
      have_header = true;
      continue;
    }
    if (fields.size() != 3)
      throw ParseError(line_no, "expected 3 fields, found " + std::to_string(fields.size()));

    CategoryRow row{parse_count(fields[0], line_no, "category"), parse_count(fields[1], line_no, "total"),
                    parse_count(fields[2], line_no, "events")};
    if (row.events > row.total)
      throw ValidationError("line " + std::to_string(line_no) + ": events exceed total");
    if (row.total == 0) throw ValidationError("line " + std::to_string(line_no) + ": zero-total stratum");
    rows.push_back(row);
    source_lines.push_back(line_no);
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'category,total,events'");

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].category < rows[b].category; });

  std::vector<CategoryRow> sorted;
  Provenance provenance;
  for (auto i : order) {
    sorted.push_back(rows[i]);
    provenance.source_rows.push_back(source_lines[i]);
  }
  return CategoryTable(std::move(name), std::move(sorted), std::move(provenance));
}

CategoryTable read_category_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto stem = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem.resize(dot);
  return parse_category_table(buf.str(), stem);
}

std::string serialize(const CategoryTable& table) {
  std::string out = "category,total,events\n";
  for (const auto& r : table.rows()) {
    out += std::to_string(r.category) + ',' + std::to_string(r.total) + ',' + std::to_string(r.events) + '\n';
  }
  return out;
}

CategoryTable expand_weights(const CategoryTable& table, Count k) {
  if (k < 1) throw ValidationError("weight factor must be >= 1");
  auto rows = table.rows();
  for (auto& r : rows) {
    r.total = checked_mul(r.total, k);
    r.events = checked_mul(r.events, k);
  }
  Provenance provenance = table.provenance();
  provenance.weight_factor = checked_mul(provenance.weight_factor, k);
  return CategoryTable(table.name(), std::move(rows), std::move(provenance));
}

}  // namespace riskbounds
