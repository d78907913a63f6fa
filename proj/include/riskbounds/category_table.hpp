#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "riskbounds/types.hpp"

namespace riskbounds {

using Count = std::int64_t;

/// One score stratum: how many people were followed and how many had the event.
struct CategoryRow {
  Count category = 0;
  Count total = 0;
  Count events = 0;

  double proportion() const { return static_cast<double>(events) / static_cast<double>(total); }
  friend bool operator==(const CategoryRow&, const CategoryRow&) = default;
};

/// Where a table came from, and how many times each person was replicated.
struct Provenance {
  std::vector<std::size_t> source_rows;
  Count weight_factor = 1;
};

/// Ordered score strata with per-stratum trial and event counts.
///
/// Construction validates: rows strictly increasing in category, every
/// category positive, every total positive, events <= total.
class CategoryTable {
 public:
  CategoryTable(std::string name, std::vector<CategoryRow> rows, Provenance provenance = {});

  const std::string& name() const { return name_; }
  const std::vector<CategoryRow>& rows() const { return rows_; }
  const Provenance& provenance() const { return provenance_; }
  std::size_t size() const { return rows_.size(); }

  Count total() const;
  Count events() const;

  Eigen::VectorXd categories() const;
  Eigen::VectorXd totals() const;
  Eigen::VectorXd event_counts() const;
  Eigen::VectorXd proportions() const;

  /// Compares rows only; names and provenance are metadata.
  friend bool operator==(const CategoryTable& a, const CategoryTable& b) { return a.rows_ == b.rows_; }

 private:
  std::string name_;
  std::vector<CategoryRow> rows_;
  Provenance provenance_;
};

/// Reads `category,total,events` CSV. Lines starting with `#` and blank lines
/// are skipped; LF and CRLF are both accepted. Rows are sorted by category.
CategoryTable parse_category_table(std::string_view text, std::string name = {});

CategoryTable read_category_table(const std::string& path);

std::string serialize(const CategoryTable& table);

/// Replicates every person k times. Proportions are unchanged.
CategoryTable expand_weights(const CategoryTable& table, Count k);

}  // namespace riskbounds
