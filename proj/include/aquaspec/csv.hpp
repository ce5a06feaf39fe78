/*
 * Copyright 2026 The Aquaspec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal locale-independent CSV and value parsing.  The file formats in
// this project are plain comma-separated numbers and identifiers; no
// quoting or escaping is needed.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aquaspec {

struct CsvRow {
  std::size_t line = 0;  // 1-based line number in the file
  std::vector<std::string> cells;
};

// Reads all non-empty lines, split on ','.  Cells are whitespace-trimmed.
std::vector<CsvRow> read_csv(const std::string& path);

std::vector<std::string> split_csv_line(std::string_view line);

// Strict double parse ('.' decimal point); throws ParseError on failure.
double parse_double(std::string_view cell, const std::string& path, std::size_t line);

// Strict non-negative integer parse.
std::uint64_t parse_uint(std::string_view cell, const std::string& path, std::size_t line);

// Shortest representation with at least `digits` significant digits.
std::string format_double(double v, int digits = 12);

// Exact round-trip representation (17 significant digits).
std::string format_double_exact(double v);

// ISO-8601 "YYYY-MM-DDTHH:MM:SS" (optional trailing 'Z') <-> Unix seconds.
std::int64_t parse_iso8601(std::string_view s, const std::string& path, std::size_t line);
std::string format_iso8601(std::int64_t unix_seconds);

std::string_view trim(std::string_view s);

}  // namespace aquaspec
