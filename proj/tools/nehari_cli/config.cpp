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

#include "config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace nehari_cli {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw CliError(kConfigError, "config: " + msg); }

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) bad("unknown key '" + k + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("wrong type for '") + key + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, std::optional<T>& out) {
  if (!obj.contains(key)) return;
  T v{};
  read(obj, key, v);
  out = v;
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  nh_solve_options_default(&c.solver);
  return c;
}

nh_branch parse_branch(const std::string& name) {
  if (name == "plus") return NH_BRANCH_PLUS;
  if (name == "minus") return NH_BRANCH_MINUS;
  bad("branch must be 'plus' or 'minus', got '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, false);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  only_keys(j, "top level",
            {"grid", "kernel", "beta", "b", "lambda", "lambda_factor", "branch", "sweep", "solver",
             "fiber", "threads", "seed"});
  RunConfig c = default_config();
  if (j.contains("grid")) {
    only_keys(j["grid"], "grid", {"n"});
    read(j["grid"], "n", c.n);
  }
  if (j.contains("kernel")) {
    only_keys(j["kernel"], "kernel", {"p", "alpha", "theta"});
    read(j["kernel"], "p", c.p);
    read(j["kernel"], "alpha", c.alpha);
    read(j["kernel"], "theta", c.theta);
  }
  read(j, "beta", c.beta);
  if (j.contains("b")) {
    only_keys(j["b"], "b", {"preset", "params"});
    read(j["b"], "preset", c.b_preset);
    read(j["b"], "params", c.b_params);
  }
  read(j, "lambda", c.lambda);
  read(j, "lambda_factor", c.lambda_factor);
  if (c.lambda && c.lambda_factor) bad("give either lambda or lambda_factor, not both");
  read(j, "branch", c.branch);
  if (c.branch != "plus" && c.branch != "minus" && c.branch != "both") {
    bad("branch must be plus, minus or both");
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    only_keys(s, "sweep", {"lambdas", "lambda_factors", "branches"});
    read(s, "lambdas", c.sweep_lambdas);
    read(s, "lambda_factors", c.sweep_factors);
    read(s, "branches", c.sweep_branches);
    if (!c.sweep_lambdas.empty() && !c.sweep_factors.empty()) {
      bad("give either sweep.lambdas or sweep.lambda_factors, not both");
    }
    for (const auto& b : c.sweep_branches) parse_branch(b);
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    only_keys(s, "solver",
              {"nonneg", "max_iter", "grad_tol", "near_lambda1_cap", "two_branch_cap", "bound_factor"});
    bool nonneg = c.solver.nonneg != 0;
    read(s, "nonneg", nonneg);
    c.solver.nonneg = nonneg ? 1 : 0;
    read(s, "max_iter", c.solver.max_iter);
    read(s, "grad_tol", c.solver.grad_tol);
    read(s, "near_lambda1_cap", c.solver.near_lambda1_cap);
    read(s, "two_branch_cap", c.solver.two_branch_cap);
    read(s, "bound_factor", c.solver.bound_factor);
  }
  if (j.contains("fiber")) {
    const json& f = j["fiber"];
    only_keys(f, "fiber", {"source", "branch", "values", "t_lo", "t_hi", "points"});
    read(f, "source", c.fiber.source);
    read(f, "branch", c.fiber.branch);
    read(f, "values", c.fiber.values);
    read(f, "t_lo", c.fiber.t_lo);
    read(f, "t_hi", c.fiber.t_hi);
    read(f, "points", c.fiber.points);
    if (c.fiber.source != "phi1" && c.fiber.source != "solution" && c.fiber.source != "values") {
      bad("fiber.source must be phi1, solution or values");
    }
    if (c.fiber.points < 2) bad("fiber.points must be >= 2");
  }
  read(j, "threads", c.threads);
  read(j, "seed", c.seed);
  if (c.threads < 1) bad("threads must be >= 1");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace nehari_cli
