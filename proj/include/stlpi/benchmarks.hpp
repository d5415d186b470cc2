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
#ifndef STLPI_BENCHMARKS_HPP
#define STLPI_BENCHMARKS_HPP

#include <string>
#include <vector>

#include "stlpi/problem_io.hpp"

namespace stlpi {

// Names of the built-in benchmark problems, in listing order.
std::vector<std::string> builtin_problem_names();

// Raw JSON of a built-in problem, exactly the shipped data file.
// Throws std::invalid_argument for unknown names.
const std::string& builtin_problem_json(const std::string& name);

// Loads a built-in problem by name.
ProblemSpec load_builtin(const std::string& name);

// Scalar integrator chasing a moving gate: stay at or below 1 at two
// ordered steps while the terminal cost pays for pushing the state up.
ProblemSpec problem_i();

// Planar double integrator: avoid a circular obstacle for the whole
// horizon and visit a box region at least once.
ProblemSpec problem_ii();

// Kinematic single track: stay inside the arena, avoid five box obstacles,
// hold each of three task circles for two consecutive steps, and never
// occupy the two overlapping task circles at once.
ProblemSpec problem_iii();

struct BruteForceResult {
  double cost = 0;
  Eigen::MatrixXd inputs;  // n_u x K
  Eigen::MatrixXd states;  // n_x x (K+1)
};

/*
 * Exhaustive minimization of the problem objective over all input
 * sequences whose every scalar entry comes from `grid`. Enumeration order
 * is lexicographic in (step, input component), ties keep the first
 * (lexicographically smallest) sequence. Intended for tiny horizons;
 * throws std::invalid_argument when |grid|^(K * n_u) exceeds 1e8.
 */
BruteForceResult brute_force_solve(const ProblemSpec& spec,
                                   const std::vector<double>& grid);

}  // namespace stlpi

#endif  // STLPI_BENCHMARKS_HPP
