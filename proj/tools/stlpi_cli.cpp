/*
 Copyright 2026 The stlpi Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stlpi.h"

namespace {

struct ProblemDeleter {
  void operator()(stlpi_problem* p) const { stlpi_problem_free(p); }
};
struct ResultDeleter {
  void operator()(stlpi_result* r) const { stlpi_result_free(r); }
};
using ProblemHandle = std::unique_ptr<stlpi_problem, ProblemDeleter>;
using ResultHandle = std::unique_ptr<stlpi_result, ResultDeleter>;

[[noreturn]] void die(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(1);
}

ProblemHandle load_problem_arg(const std::string& arg) {
  const auto names =
      nlohmann::json::parse(std::string(stlpi_builtin_names_json()));
  stlpi_problem* raw = nullptr;
  for (const auto& name : names) {
    if (name.get<std::string>() == arg) {
      if (stlpi_problem_builtin(arg.c_str(), &raw) != STLPI_OK) {
        die(stlpi_last_error());
      }
      return ProblemHandle(raw);
    }
  }
  if (stlpi_problem_from_file(arg.c_str(), &raw) != STLPI_OK) {
    die(stlpi_last_error());
  }
  return ProblemHandle(raw);
}

int run_command(const std::string& problem_arg, bool seed_set, uint64_t seed,
                const std::vector<std::string>& overrides,
                const std::string& out_dir) {
  ProblemHandle problem = load_problem_arg(problem_arg);
  if (seed_set) {
    const std::string kv = "solver.seed=" + std::to_string(seed);
    if (stlpi_problem_override(problem.get(), kv.c_str()) != STLPI_OK) {
      die(stlpi_last_error());
    }
  }
  for (const std::string& kv : overrides) {
    if (stlpi_problem_override(problem.get(), kv.c_str()) != STLPI_OK) {
      die(stlpi_last_error());
    }
  }

  stlpi_result* raw = nullptr;
  const auto start = std::chrono::steady_clock::now();
  if (stlpi_solve(problem.get(), &raw) != STLPI_OK) {
    die(stlpi_last_error());
  }
  ResultHandle result(raw);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();

  const double cost = stlpi_result_final_cost(result.get());
  const double rho = stlpi_result_final_robustness(result.get());
  const bool satisfied = stlpi_result_satisfied(result.get()) != 0;

  std::cout << "problem: " << stlpi_problem_name(problem.get()) << "\n"
            << "final_cost: " << cost << "\n"
            << "final_robustness: " << rho << "\n"
            << "satisfied: " << (satisfied ? "true" : "false") << "\n"
            << "wall_clock_ms: " << wall_ms << "\n";

  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) die("cannot create output directory '" + out_dir + "'");
    {
      std::ofstream record(std::filesystem::path(out_dir) / "record.json");
      record << stlpi_result_record_json(result.get(), wall_ms) << "\n";
      if (!record) die("cannot write record.json");
    }
    {
      std::ofstream csv(std::filesystem::path(out_dir) / "trajectory.csv");
      csv << stlpi_result_trajectory_csv(result.get());
      if (!csv) die("cannot write trajectory.csv");
    }
  }

  const bool zero_violation_cost =
      stlpi_problem_penalizes_violation_only(problem.get()) != 0 && rho >= 0.0;
  return satisfied || zero_violation_cost ? 0 : 2;
}

int eval_command(const std::string& csv_path, const std::string& problem_arg) {
  ProblemHandle problem = load_problem_arg(problem_arg);
  std::ifstream in(csv_path);
  if (!in) die("cannot open trajectory file '" + csv_path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string csv = buffer.str();

  char* report = nullptr;
  if (stlpi_eval_csv(problem.get(), csv.c_str(), &report) != STLPI_OK) {
    die(stlpi_last_error());
  }
  std::cout << report << "\n";
  stlpi_string_free(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-integral solver for temporal-logic optimal control"};
  app.require_subcommand(1);

  std::string problem_arg;
  uint64_t seed = 0;
  std::vector<std::string> overrides;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Solve a problem and report results");
  run->add_option("problem", problem_arg,
                  "Built-in problem name or problem JSON file")
      ->required();
  auto* seed_opt = run->add_option("--seed", seed, "Solver RNG seed");
  run->add_option("--set", overrides,
                  "Override a config entry, key=value (repeatable)");
  run->add_option("--out", out_dir,
                  "Directory for record.json and trajectory.csv");

  std::string csv_path;
  std::string eval_problem_arg;
  auto* eval = app.add_subcommand(
      "eval", "Evaluate a trajectory CSV against a problem's formula");
  eval->add_option("csv", csv_path, "Trajectory CSV file")->required();
  eval->add_option("problem", eval_problem_arg,
                   "Built-in problem name or problem JSON file")
      ->required();

  auto* list = app.add_subcommand("list", "List built-in problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(problem_arg, seed_opt->count() > 0, seed, overrides,
                         out_dir);
    }
    if (eval->parsed()) return eval_command(csv_path, eval_problem_arg);
    if (list->parsed()) {
      const auto names =
          nlohmann::json::parse(std::string(stlpi_builtin_names_json()));
      for (const auto& name : names) {
        std::cout << name.get<std::string>() << "\n";
      }
      return 0;
    }
  } catch (const std::exception& err) {
    die(err.what());
  }
  return 1;
}
