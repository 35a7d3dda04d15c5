// Copyright 2026 The Authors.
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

// Minimal RFC 4180 CSV reading and writing.

#ifndef MARKETRANK_CSV_HPP_
#define MARKETRANK_CSV_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace marketrank {

using CsvRow = std::vector<std::string>;

struct CsvTable {
  CsvRow header;
  std::vector<CsvRow> rows;

  // Column index by header name, or -1.
  int column(const std::string& name) const;
};

std::string csv_escape(const std::string& field);
std::string csv_line(const CsvRow& row);
// Shortest decimal that reads back to the same double.
std::string format_real(double v);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace marketrank

#endif  // MARKETRANK_CSV_HPP_
