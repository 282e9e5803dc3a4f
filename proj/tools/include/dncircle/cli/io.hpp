// Copyright 2026 The dncircle Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dncircle/errors.hpp"

namespace dncircle::cli {

/// Output path could not be created, written or renamed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// %.17g, the shortest format that round-trips every double.
std::string format_double(double v);

/// RFC-4180 field quoting: fields containing ',', '"', CR or LF are wrapped in
/// quotes with embedded quotes doubled.
std::string csv_field(std::string_view field);

/// Row-oriented CSV text builder with '\n' line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& fields);
  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return columns_; }
  const std::string& text() const { return text_; }

 private:
  void append(const std::vector<std::string>& fields);

  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Writes `contents` to a sibling temp file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view contents);

/// Creates `dir` (and parents) if needed; throws IoError otherwise.
void ensure_directory(const std::filesystem::path& dir);

}  // namespace dncircle::cli
