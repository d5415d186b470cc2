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
#include "stlpi/benchmarks.hpp"

#include <limits>
#include <stdexcept>

#include "builtin_problems.inc"

namespace stlpi {

std::vector<std::string> builtin_problem_names() {
  return {"problem_i", "problem_ii", "problem_iii"};
}

const std::string& builtin_problem_json(const std::string& name) {
  static const std::string problem_i_json(kProblemIJson);
  static const std::string problem_ii_json(kProblemIIJson);
  static const std::string problem_iii_json(kProblemIIIJson);
  if (name == "problem_i") return problem_i_json;
  if (name == "problem_ii") return problem_ii_json;
  if (name == "problem_iii") return problem_iii_json;
  throw std::invalid_argument("unknown built-in problem '" + name + "'");
}

ProblemSpec load_builtin(const std::string& name) {
  return load_problem(
      nlohmann::ordered_json::parse(builtin_problem_json(name)));
}

ProblemSpec problem_i() { return load_builtin("problem_i"); }
ProblemSpec problem_ii() { return load_builtin("problem_ii"); }
ProblemSpec problem_iii() { return load_builtin("problem_iii"); }

BruteForceResult brute_force_solve(const ProblemSpec& spec,
                                   const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("grid must not be empty");
  const int slots = spec.horizon * spec.model.input_dim;
  double combinations = 1.0;
  for (int i = 0; i < slots; ++i) {
    combinations *= static_cast<double>(grid.size());
    if (combinations > 1e8) {
      throw std::invalid_argument(
          "brute force budget exceeded: |grid|^(K*n_u) > 1e8");
    }
  }

  const CompiledFormula compiled(spec.formula);
  std::vector<size_t> odometer(slots, 0);
  Eigen::MatrixXd inputs(spec.model.input_dim, spec.horizon);

  BruteForceResult best;
  best.cost = std::numeric_limits<double>::infinity();
  bool have_best = false;

  while (true) {
    for (int s = 0; s < slots; ++s) {
      inputs(s % spec.model.input_dim, s / spec.model.input_dim) =
          grid[odometer[s]];
    }
    const Eigen::MatrixXd states = rollout(spec.model, spec.x0, inputs);
    const double cost =
        trajectory_objective(states, inputs, compiled, spec.solver);

    if (!have_best || cost < best.cost) {
      have_best = true;
      best.cost = cost;
      best.inputs = inputs;
      best.states = states;
    }

    // Advance the odometer; the last slot spins fastest so enumeration is
    // lexicographic in the flattened input sequence.
    int s = slots - 1;
    while (s >= 0 && ++odometer[s] == grid.size()) odometer[s--] = 0;
    if (s < 0) break;
  }
  return best;
}

}  // namespace stlpi
