// Copyright 2026 The mdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MDIST_CSV_H_
#define MDIST_CSV_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace mdist {

// Minimal RFC 4180-style table: first non-empty line is the header, fields
// may be double-quoted, LF and CRLF line endings are both accepted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // 1-based source line of each row

  // Index of `name` in the header; ParseError (line 1) when absent.
  std::size_t Column(std::string_view name) const;
  bool HasColumn(std::string_view name) const;
};

CsvTable ReadCsv(std::istream& in);
CsvTable ReadCsvFile(const std::filesystem::path& path);

// Quotes the field only when it contains a separator, quote or newline.
std::string CsvEscape(std::string_view field);

// Shortest decimal text that parses back to exactly `value`.
std::string FormatNumber(double value);

// Parses a finite double; ParseError carrying `line` otherwise.
double ParseNumber(std::string_view text, std::size_t line);

std::string ReadTextFile(const std::filesystem::path& path);

// Writes to a sibling temporary and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

}  // namespace mdist

#endif  // MDIST_CSV_H_
