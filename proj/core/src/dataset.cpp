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

#include "privometer/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "privometer/csv.hpp"
#include "privometer/errors.hpp"
#include "privometer/rng.hpp"

namespace privometer {

namespace {

constexpr const char* kMissingLabel = "⊥";  // "⟂"

std::int32_t label_code(const std::vector<std::string>& alphabet,
                        const std::string& label) {
  const auto it = std::lower_bound(alphabet.begin(), alphabet.end(), label);
  if (it == alphabet.end() || *it != label) return -1;
  return static_cast<std::int32_t>(it - alphabet.begin());
}

}  // namespace

std::string to_string(ColumnKind kind) {
  return kind == ColumnKind::categorical ? "categorical" : "continuous";
}

Dataset Dataset::from_rows(std::vector<ColumnSpec> specs,
                           const std::vector<std::vector<std::string>>& rows) {
  if (specs.empty()) throw ValidationError("dataset: at least one column required");
  {
    std::set<std::string> names;
    for (const auto& s : specs) {
      if (!names.insert(s.name).second) {
        throw ValidationError("dataset: duplicate column name '" + s.name + "'");
      }
    }
  }

  Dataset d;
  d.columns_.resize(specs.size());
  for (std::size_t c = 0; c < specs.size(); ++c) d.columns_[c].spec = specs[c];

  // First pass: arity checks, the missing-value policy, and alphabet
  // collection (from kept rows only). A row is kept unless a nullable
  // continuous column is empty; empty non-nullable cells are hard errors.
  std::vector<bool> keep(rows.size(), true);
  std::vector<std::set<std::string>> alphabets(specs.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != specs.size()) {
      throw ValidationError("dataset: row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(specs.size()));
    }
    for (std::size_t c = 0; c < specs.size(); ++c) {
      if (!rows[r][c].empty()) continue;
      if (!specs[c].nullable) {
        throw ValidationError("dataset: empty cell in column '" +
                              specs[c].name + "', row " + std::to_string(r) +
                              " (column is not nullable)");
      }
      if (specs[c].kind == ColumnKind::continuous) keep[r] = false;
    }
    if (!keep[r]) continue;
    for (std::size_t c = 0; c < specs.size(); ++c) {
      if (specs[c].kind != ColumnKind::categorical) continue;
      const std::string& cell = rows[r][c];
      alphabets[c].insert(cell.empty() ? kMissingLabel : cell);
    }
  }
  for (std::size_t c = 0; c < specs.size(); ++c) {
    d.columns_[c].labels.assign(alphabets[c].begin(), alphabets[c].end());
  }

  // Second pass: encode the kept rows.
  std::uint32_t next_id = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!keep[r]) continue;

    for (std::size_t c = 0; c < specs.size(); ++c) {
      Column& col = d.columns_[c];
      const std::string& cell = rows[r][c];
      if (specs[c].kind == ColumnKind::categorical) {
        const std::string& label = cell.empty() ? kMissingLabel : cell;
        col.codes.push_back(label_code(col.labels, label));
      } else {
        double v = 0.0;
        if (!parses_as_double(cell, &v)) {
          throw ValidationError("dataset: non-numeric value '" + cell +
                                "' in continuous column '" + specs[c].name +
                                "', row " + std::to_string(r));
        }
        if (!std::isfinite(v)) {
          throw ValidationError("dataset: non-finite value in continuous column '" +
                                specs[c].name + "', row " + std::to_string(r));
        }
        col.values.push_back(v);
      }
    }
    d.row_ids_.push_back(next_id++);
    d.duplicate_of_.push_back(-1);
  }
  return d;
}

std::vector<ColumnSpec> Dataset::schema() const {
  std::vector<ColumnSpec> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.spec);
  return out;
}

std::vector<std::string> Dataset::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.spec.name);
  return out;
}

bool Dataset::has_column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.spec.name == name) return true;
  }
  return false;
}

std::size_t Dataset::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].spec.name == name) return i;
  }
  throw ValidationError("dataset: no column named '" + std::string(name) + "'");
}

std::optional<std::uint32_t> Dataset::duplicate_of(std::size_t row) const {
  const std::int64_t v = duplicate_of_[row];
  if (v < 0) return std::nullopt;
  return static_cast<std::uint32_t>(v);
}

std::optional<std::size_t> Dataset::position_of_row_id(std::uint32_t id) const {
  for (std::size_t i = 0; i < row_ids_.size(); ++i) {
    if (row_ids_[i] == id) return i;
  }
  return std::nullopt;
}

const std::string& Dataset::categorical_label(std::size_t row,
                                              std::size_t col) const {
  const Column& c = columns_[col];
  if (c.spec.kind != ColumnKind::categorical) {
    throw ValidationError("dataset: column '" + c.spec.name +
                          "' is not categorical");
  }
  return c.labels[static_cast<std::size_t>(c.codes[row])];
}

double Dataset::continuous_value(std::size_t row, std::size_t col) const {
  const Column& c = columns_[col];
  if (c.spec.kind != ColumnKind::continuous) {
    throw ValidationError("dataset: column '" + c.spec.name +
                          "' is not continuous");
  }
  return c.values[row];
}

std::string Dataset::cell_text(std::size_t row, std::size_t col) const {
  const Column& c = columns_[col];
  if (c.spec.kind == ColumnKind::categorical) {
    return c.labels[static_cast<std::size_t>(c.codes[row])];
  }
  return format_double(c.values[row]);
}

std::string Dataset::row_key(std::size_t row) const {
  std::string key;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) key.push_back('\x1f');
    key += cell_text(row, c);
  }
  return key;
}

Dataset Dataset::select_rows(const std::vector<std::uint32_t>& positions) const {
  Dataset out;
  out.columns_.resize(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    const Column& src = columns_[c];
    Column& dst = out.columns_[c];
    dst.spec = src.spec;
    dst.labels = src.labels;
    if (src.spec.kind == ColumnKind::categorical) {
      dst.codes.reserve(positions.size());
      for (auto p : positions) dst.codes.push_back(src.codes[p]);
    } else {
      dst.values.reserve(positions.size());
      for (auto p : positions) dst.values.push_back(src.values[p]);
    }
  }
  out.row_ids_.reserve(positions.size());
  out.duplicate_of_.reserve(positions.size());
  for (auto p : positions) {
    if (p >= row_count()) throw ValidationError("select_rows: position out of range");
    out.row_ids_.push_back(row_ids_[p]);
    out.duplicate_of_.push_back(duplicate_of_[p]);
  }
  return out;
}

Dataset Dataset::drop_rows(
    const std::vector<std::uint32_t>& sorted_positions) const {
  std::vector<std::uint32_t> keep;
  keep.reserve(row_count() - sorted_positions.size());
  std::size_t next = 0;
  for (std::uint32_t p = 0; p < row_count(); ++p) {
    if (next < sorted_positions.size() && sorted_positions[next] == p) {
      ++next;
      continue;
    }
    keep.push_back(p);
  }
  if (next != sorted_positions.size()) {
    throw ValidationError("drop_rows: positions must be sorted and in range");
  }
  return select_rows(keep);
}

Dataset load_csv(const std::filesystem::path& path,
                 const std::optional<std::vector<ColumnSpec>>& schema,
                 LoadReport* report) {
  const CsvTable table = read_csv_file(path);

  if (table.header.empty() ||
      (table.header.size() == 1 && table.header[0].empty())) {
    throw ValidationError("load_csv: missing header row in " + path.string());
  }
  {
    std::set<std::string> names;
    for (const auto& h : table.header) {
      if (!names.insert(h).second) {
        throw ValidationError("load_csv: duplicate header name '" + h + "'");
      }
    }
  }

  std::vector<ColumnSpec> specs;
  if (schema.has_value()) {
    // Match header names against schema names as sets; file order wins.
    std::map<std::string, ColumnSpec> by_name;
    for (const auto& s : *schema) {
      if (!by_name.emplace(s.name, s).second) {
        throw ValidationError("load_csv: duplicate schema column '" + s.name + "'");
      }
    }
    if (by_name.size() != table.header.size()) {
      throw ValidationError(
          "load_csv: header has " + std::to_string(table.header.size()) +
          " columns but schema declares " + std::to_string(by_name.size()));
    }
    for (const auto& h : table.header) {
      const auto it = by_name.find(h);
      if (it == by_name.end()) {
        throw ValidationError("load_csv: header column '" + h +
                              "' not present in schema");
      }
      specs.push_back(it->second);
    }
  } else {
    // Kind inference: continuous iff every non-empty value parses as a
    // finite real; empty cells are rejected later (nothing is nullable).
    specs.resize(table.header.size());
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      specs[c].name = table.header[c];
      bool numeric = true;
      for (const auto& row : table.rows) {
        if (c >= row.size()) break;  // arity error reported below
        const std::string& cell = row[c];
        if (cell.empty()) continue;
        double v = 0.0;
        if (!parses_as_double(cell, &v) || !std::isfinite(v)) {
          numeric = false;
          break;
        }
      }
      specs[c].kind = numeric ? ColumnKind::continuous : ColumnKind::categorical;
    }
  }

  LoadReport local;
  Dataset d = Dataset::from_rows(specs, table.rows);
  local.rows_loaded = d.row_count();
  local.rows_rejected_missing_continuous = table.rows.size() - d.row_count();
  if (report) *report = local;
  return d;
}

std::vector<ColumnSpec> load_schema(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("schema: invalid JSON in " + path.string() + ": " +
                          e.what());
  }
  if (!doc.is_object() || doc.empty()) {
    throw ValidationError("schema: expected a non-empty JSON object of columns");
  }
  std::vector<ColumnSpec> specs;
  for (const auto& [name, value] : doc.items()) {
    ColumnSpec spec;
    spec.name = name;
    if (!value.is_object() || !value.contains("kind")) {
      throw ValidationError("schema: column '" + name +
                            "' must be an object with a \"kind\" field");
    }
    const std::string kind = value.at("kind").get<std::string>();
    if (kind == "categorical") {
      spec.kind = ColumnKind::categorical;
    } else if (kind == "continuous") {
      spec.kind = ColumnKind::continuous;
    } else {
      throw ValidationError("schema: column '" + name + "' has unknown kind '" +
                            kind + "'");
    }
    spec.pii = value.value("pii", false);
    spec.nullable = value.value("nullable", false);
    specs.push_back(std::move(spec));
  }
  return specs;
}

SplitResult split_members(const Dataset& d, std::uint32_t non_member_count,
                          std::uint64_t seed) {
  const std::size_t n = d.row_count();
  if (non_member_count == 0 || non_member_count >= n) {
    throw ValidationError(
        "split_members: non_member_count must satisfy 0 < count < " +
        std::to_string(n) + ", got " + std::to_string(non_member_count));
  }
  Rng rng = Rng(seed).fork("split_members");
  const std::vector<std::uint32_t> non_member_pos =
      rng.sample_without_replacement(static_cast<std::uint32_t>(n),
                                     non_member_count);
  SplitResult out;
  out.non_members = d.select_rows(non_member_pos);
  out.members = d.drop_rows(non_member_pos);
  return out;
}

Dataset replicate(const Dataset& d, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ValidationError("replicate: fraction must lie in [0, 1]");
  }
  const std::size_t n = d.row_count();
  const auto k = static_cast<std::uint32_t>(
      std::floor(fraction * static_cast<double>(n)));
  if (k == 0) return d;

  Rng rng = Rng(seed).fork("replicate");
  const std::vector<std::uint32_t> chosen =
      rng.sample_without_replacement(static_cast<std::uint32_t>(n), k);

  Dataset out = d;
  std::uint32_t next_id = 0;
  for (auto id : d.row_ids()) next_id = std::max(next_id, id + 1);
  for (auto p : chosen) {
    for (std::size_t c = 0; c < out.columns_.size(); ++c) {
      Column& col = out.columns_[c];
      if (col.spec.kind == ColumnKind::categorical) {
        col.codes.push_back(col.codes[p]);
      } else {
        col.values.push_back(col.values[p]);
      }
    }
    out.row_ids_.push_back(next_id++);
    out.duplicate_of_.push_back(static_cast<std::int64_t>(d.row_ids()[p]));
  }
  return out;
}

}  // namespace privometer
