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

#ifndef CONVEXMIN_TOOLS_RUNNERS_HPP_
#define CONVEXMIN_TOOLS_RUNNERS_HPP_

#include <cstdint>
#include <optional>
#include <string>

namespace convexmin::tools {

inline constexpr const char* kVersion = "0.1.0";

// All runners return the process exit code: 0 for PASS (or a successful
// computation), 1 for a FAIL verdict. Usage and config errors throw; main
// maps them to exit code 2.

int run_argmin(const std::string& spec_path, double tol, const std::string& policy,
               const std::string& out_path);

int run_geninv(const std::string& spec_path, const std::string& y,
               const std::string& of, double tol, const std::string& out_path);

int run_converge(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& out_dir);

int run_argmin_limits(const std::string& config_path, std::optional<std::uint64_t> seed,
                      const std::string& out_dir);

int run_uniqueness(const std::string& config_path, std::optional<std::uint64_t> seed,
                   const std::string& out_dir);

}  // namespace convexmin::tools

#endif  // CONVEXMIN_TOOLS_RUNNERS_HPP_
