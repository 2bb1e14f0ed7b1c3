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

// nehari: batch front-end for the fractional p-Laplacian Nehari solver.
//
//   nehari <eigen|solve|sweep|fiber-dump|check> --config run.json --out DIR

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace nehari_cli;

int run(int argc, char** argv) {
  CLI::App app{"Fractional p-Laplacian Nehari manifold solver"};
  app.require_subcommand(1, 1);
  // Global flags may follow the subcommand name.
  app.fallthrough();

  std::string config_path, out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool allow_near = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--threads", threads, "Worker threads for sweeps (overrides the config)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--allow-near-lambda1", allow_near, "Permit lambda within the proximity cap of lambda1");

  auto* eigen = app.add_subcommand("eigen", "Principal eigenpair (and lambda_b)");
  auto* solve = app.add_subcommand("solve", "Minimize J on one or both Nehari branches");
  auto* sweep = app.add_subcommand("sweep", "Branch minima over a list of lambda values");
  auto* fiber = app.add_subcommand("fiber-dump", "Sample a fibering map t -> J(t u)");
  auto* chk = app.add_subcommand("check", "Run the oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  Context ctx;
  if (!config_path.empty()) {
    ctx.config = load_config(config_path);
  } else if (chk->parsed()) {
    ctx.config = default_config();
  } else {
    throw CliError(kConfigError, "--config is required for this command");
  }
  if (seed) ctx.config.seed = *seed;
  if (threads) ctx.config.threads = *threads;
  ctx.allow_near_lambda1 = allow_near;
  ctx.out_dir = out_dir;
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec) throw CliError(kFailure, "cannot create " + out_dir + ": " + ec.message());

  if (eigen->parsed()) return cmd_eigen(ctx);
  if (solve->parsed()) return cmd_solve(ctx);
  if (sweep->parsed()) return cmd_sweep(ctx);
  if (fiber->parsed()) return cmd_fiber_dump(ctx);
  return cmd_check(ctx);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "nehari: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "nehari: " << e.what() << "\n";
    return kFailure;
  }
}
