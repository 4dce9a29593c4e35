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

#ifndef PRIVOMETER_CSV_HPP_
#define PRIVOMETER_CSV_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace privometer {

// Raw cells of a CSV document. The first record is kept in `header`; all
// remaining records are in `rows`. No type interpretation happens here.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Parse RFC-4180-style CSV text: comma separated, double-quote quoting with
// "" escapes, LF or CRLF record ends, optional UTF-8 BOM, optional final
// newline. Quoting errors raise ValidationError. Arity is NOT enforced here;
// loaders check it so they can report row numbers.
CsvTable parse_csv(std::string_view text);

// Read and parse a CSV file. Missing/unreadable file raises IoError.
CsvTable read_csv_file(const std::filesystem::path& path);

// Quote a field if it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

// Append one CSV record (with trailing '\n') to `out`.
void append_csv_row(std::string& out, const std::vector<std::string>& fields);

// Shortest round-trip decimal form of a double (std::to_chars). Every report
// uses this single formatter so identical values always print identically.
std::string format_double(double v);

// Strict full-string parse of a decimal double. Raises ValidationError on
// trailing garbage or empty input. Accepts inf/nan spellings; callers that
// need finite values must check separately.
double parse_double(std::string_view s);

// Non-throwing variant: true iff the whole string parses as a double.
bool parses_as_double(std::string_view s, double* out = nullptr);

// Write a whole file, creating parent directories. Raises IoError on failure.
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

// Read a whole file into a string. Raises IoError on failure.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace privometer

#endif  // PRIVOMETER_CSV_HPP_
