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

#ifndef NEHARI_CLI_COMMANDS_HPP
#define NEHARI_CLI_COMMANDS_HPP

#include <filesystem>

#include "config.hpp"

namespace nehari_cli {

struct Context {
  RunConfig config;
  std::filesystem::path out_dir;
  bool allow_near_lambda1 = false;
};

// Each command writes its CSV files into ctx.out_dir and returns an exit code.
int cmd_eigen(const Context& ctx);
int cmd_solve(const Context& ctx);
int cmd_sweep(const Context& ctx);
int cmd_fiber_dump(const Context& ctx);
int cmd_check(const Context& ctx);

}  // namespace nehari_cli

#endif  // NEHARI_CLI_COMMANDS_HPP
