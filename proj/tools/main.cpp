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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "runners.hpp"

int main(int argc, char** argv) {
  using namespace convexmin::tools;

  CLI::App app{"convexmin: exact minimum sets of univariate convex functions and "
               "limit-theorem experiment harness"};
  app.require_subcommand(1);

  std::string spec_path, config_path, out_path, out_dir = "results";
  std::string policy = "midpoint", of = "dplus", y_text = "0";
  double tol = 1e-8;
  std::optional<std::uint64_t> seed;

  auto* argmin = app.add_subcommand("argmin", "Minimum set, smallest/largest minimizer, "
                                              "and a selected minimizer of a function spec");
  argmin->add_option("--spec", spec_path, "Function spec JSON file")->required();
  argmin->add_option("--tol", tol, "Enclosure width for oracle bisection");
  argmin->add_option("--policy", policy, "smallest|largest|midpoint|fraction:p/q");
  argmin->add_option("--out", out_path, "Output JSON path (stdout if omitted)");

  auto* geninv = app.add_subcommand("geninv", "Generalized inverses inf{x: F(x) >= y} and "
                                              "sup{x: F(x) <= y}");
  geninv->add_option("--spec", spec_path, "Function spec JSON file")->required();
  geninv->add_option("--y", y_text, "Level y (number or p/q)");
  geninv->add_option("--of", of, "pwl: dplus|dminus (derivative step function); "
                                 "expr: self");
  geninv->add_option("--tol", tol, "Bisection tolerance for the numeric route");
  geninv->add_option("--out", out_path, "Output JSON path (stdout if omitted)");

  auto* experiment = app.add_subcommand("experiment", "Verification experiments");
  experiment->require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Experiment config JSON")->required();
    cmd->add_option("--seed", seed, "Master seed (overrides the config)");
    cmd->add_option("--out", out_dir, "Output directory");
  };
  auto* converge = experiment->add_subcommand(
      "converge", "Deterministic semicontinuity and uniform-convergence checks");
  add_common(converge);
  auto* limits = experiment->add_subcommand(
      "argmin-limits", "Monte Carlo argmin limit-theorem experiments");
  add_common(limits);
  auto* uniqueness = experiment->add_subcommand(
      "uniqueness", "Minimizer-uniqueness diagnostics and the width/membership identity");
  add_common(uniqueness);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (argmin->parsed()) return run_argmin(spec_path, tol, policy, out_path);
    if (geninv->parsed()) return run_geninv(spec_path, y_text, of, tol, out_path);
    if (converge->parsed()) return run_converge(config_path, seed, out_dir);
    if (limits->parsed()) return run_argmin_limits(config_path, seed, out_dir);
    if (uniqueness->parsed()) return run_uniqueness(config_path, seed, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
