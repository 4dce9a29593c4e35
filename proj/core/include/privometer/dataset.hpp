// Copyright 2026 The Privometer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVOMETER_DATASET_HPP_
#define PRIVOMETER_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace privometer {

enum class ColumnKind { categorical, continuous };

std::string to_string(ColumnKind kind);

// Declared shape of one column. `pii` marks columns an attacker could know
// from public sources; `nullable` opts a column into the explicit
// missing-value policy (see load_csv).
struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::categorical;
  bool pii = false;
  bool nullable = false;
};

// Column storage. Categorical columns are dictionary-encoded against a
// sorted alphabet of observed labels; continuous columns hold finite doubles.
struct Column {
  ColumnSpec spec;
  std::vector<std::string> labels;   // categorical alphabet, sorted unique
  std::vector<std::int32_t> codes;   // categorical: per-row index into labels
  std::vector<double> values;        // continuous: per-row value
};

// Counters reported by load_csv.
struct LoadReport {
  std::size_t rows_loaded = 0;
  // Rows dropped because a nullable continuous column had an empty cell.
  std::size_t rows_rejected_missing_continuous = 0;
};

// Immutable typed table. Every row carries a stable row_id (assigned at load
// and preserved by all derived views) and a duplicate-of lineage used by the
// record-replication study: freshly appended duplicates record the row_id of
// the row they copy; rows with original lineage store nullopt.
//
// All operations are pure: they return new Dataset values and never mutate
// their inputs, so Datasets are safe to share across threads.
class Dataset {
 public:
  Dataset() = default;

  // Build a dataset from in-memory text cells (used by tests and by the
  // loader). Rows must match the specs' arity and kinds; invalid cells raise
  // ValidationError.
  static Dataset from_rows(std::vector<ColumnSpec> specs,
                           const std::vector<std::vector<std::string>>& rows);

  std::size_t row_count() const { return row_ids_.size(); }
  std::size_t column_count() const { return columns_.size(); }

  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t i) const { return columns_[i]; }
  std::vector<ColumnSpec> schema() const;
  std::vector<std::string> column_names() const;

  bool has_column(std::string_view name) const;
  // Index of a named column; raises ValidationError if absent.
  std::size_t column_index(std::string_view name) const;

  std::uint32_t row_id(std::size_t row) const { return row_ids_[row]; }
  const std::vector<std::uint32_t>& row_ids() const { return row_ids_; }
  std::optional<std::uint32_t> duplicate_of(std::size_t row) const;

  // Position of a row_id in this dataset, if present.
  std::optional<std::size_t> position_of_row_id(std::uint32_t id) const;

  // Cell accessors. The typed accessors raise ValidationError when the
  // column has the other kind.
  const std::string& categorical_label(std::size_t row, std::size_t col) const;
  double continuous_value(std::size_t row, std::size_t col) const;
  // Text form of any cell (labels verbatim; doubles via format_double).
  std::string cell_text(std::size_t row, std::size_t col) const;

  // Canonical whole-row key for exact-duplicate detection across all columns.
  std::string row_key(std::size_t row) const;

  // New dataset containing exactly the given row positions, in the given
  // order. Keeps row_ids, lineage, column specs, and categorical alphabets.
  Dataset select_rows(const std::vector<std::uint32_t>& positions) const;

  // Complement view: all rows except the given sorted positions.
  Dataset drop_rows(const std::vector<std::uint32_t>& sorted_positions) const;

 private:
  friend Dataset replicate(const Dataset&, double, std::uint64_t);

  std::vector<Column> columns_;
  std::vector<std::uint32_t> row_ids_;
  // Parallel to row_ids_: source row_id for replicated rows, -1 otherwise.
  std::vector<std::int64_t> duplicate_of_;
};

// Load a CSV file into a typed dataset.
//
// Without a schema, kinds are inferred: a column is continuous iff every
// non-empty value parses as a finite real, else categorical; empty cells are
// rejected (no column is nullable without a schema). With a schema, header
// names and schema names must match as sets (order-free); empty cells in
// nullable categorical columns become the distinct label "⟂", empty cells in
// nullable continuous columns reject that row (counted in the report), and
// empty cells elsewhere are errors. Ragged rows, duplicate header names, and
// non-numeric values in continuous columns are errors. row_ids are assigned
// 0..n-1 over loaded rows in file order.
Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::vector<ColumnSpec>>& schema =
                     std::nullopt,
                 LoadReport* report = nullptr);

// Load a schema file: a JSON object mapping column name to
// {"kind": "categorical"|"continuous", "pii": bool, "nullable": bool}
// ("kind" required, the flags default to false).
std::vector<ColumnSpec> load_schema(const std::filesystem::path& path);

struct SplitResult {
  Dataset members;
  Dataset non_members;
};

// Partition rows into members and non-members by sampling non_member_count
// rows uniformly without replacement (seeded; deterministic). Both parts
// preserve original row order and row_ids. Requires
// 0 < non_member_count < row_count.
SplitResult split_members(const Dataset& d, std::uint32_t non_member_count,
                          std::uint64_t seed);

// Append one exact duplicate for each of floor(fraction * n) distinct rows
// chosen uniformly (seeded). Duplicates get fresh row_ids (continuing past
// the current maximum) and record the source row_id as their lineage.
// fraction must lie in [0, 1].
Dataset replicate(const Dataset& d, double fraction, std::uint64_t seed);

}  // namespace privometer

#endif  // PRIVOMETER_DATASET_HPP_
