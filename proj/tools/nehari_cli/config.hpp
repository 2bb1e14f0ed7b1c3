// Copyright 2026 The nehari Authors.
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

#ifndef NEHARI_CLI_CONFIG_HPP
#define NEHARI_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nehari/nehari.h"

namespace nehari_cli {

// Exit codes of the command-line tool.
enum Exit : int {
  kOk = 0,
  kFailure = 1,  // anything without a dedicated code (no witness, internal)
  kConfigError = 2,
  kBranchEmpty = 3,
  kNotConverged = 4,
  kOracleFailure = 5,
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

struct FiberConfig {
  std::string source = "phi1";  // phi1 | solution | values
  std::string branch = "plus";  // for source = solution
  std::vector<double> values;
  std::optional<double> t_lo, t_hi;
  int points = 200;
};

struct RunConfig {
  int n = 64;
  double p = 2.0, alpha = 0.25, theta = 1.0, beta = 1.5;
  std::string b_preset = "pos-core";
  std::vector<double> b_params{0.5};

  // At most one of the two; the factor multiplies lambda1.
  std::optional<double> lambda, lambda_factor;
  std::string branch = "plus";  // plus | minus | both

  std::vector<double> sweep_lambdas, sweep_factors;
  std::vector<std::string> sweep_branches{"plus"};

  nh_solve_options solver{};
  FiberConfig fiber;

  int threads = 1;
  std::uint64_t seed = 1;
};

RunConfig default_config();

// Strict JSON; unknown keys are rejected.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

nh_branch parse_branch(const std::string& name);

}  // namespace nehari_cli

#endif  // NEHARI_CLI_CONFIG_HPP
