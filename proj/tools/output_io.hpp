// Copyright 2026 The convexmin Authors
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

#ifndef CONVEXMIN_TOOLS_OUTPUT_IO_HPP_
#define CONVEXMIN_TOOLS_OUTPUT_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace convexmin::tools {

// Shortest round-trip decimal form; deterministic across runs.
std::string format_double(double v);

// Temp file + rename in the target directory; readers never observe a
// partial file.
void atomic_write_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& bytes);

// Rows of already-formatted cells under a header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// "<csv path>.meta.json" carrying config hash, seed, and version.
void write_csv_with_sidecar(const std::string& path, const CsvWriter& csv,
                            std::uint64_t config_hash, std::uint64_t seed,
                            const std::string& version);

}  // namespace convexmin::tools

#endif  // CONVEXMIN_TOOLS_OUTPUT_IO_HPP_
