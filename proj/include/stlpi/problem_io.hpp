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
#ifndef STLPI_PROBLEM_IO_HPP
#define STLPI_PROBLEM_IO_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "stlpi/parser.hpp"
#include "stlpi/solver.hpp"
#include "stlpi/system.hpp"

namespace stlpi {

/*
 * A fully assembled problem instance: dynamics, horizon, initial state,
 * formula and the solver configuration (which carries the stage and
 * terminal costs). `document` is the canonically ordered JSON the instance
 * was resolved from, with defaults filled in, and serializes the same way
 * on every run.
 */
struct ProblemSpec {
  std::string name;
  System model;
  int horizon = 1;
  Eigen::VectorXd x0;
  std::string formula_text;
  Formula formula = Formula::verum();
  PredicateTable predicates;
  SolverConfig solver;
  nlohmann::ordered_json document;
};

/*
 * Problem document schema (all costs optional, defaulting to zero):
 *
 * {
 *   "name": "...",
 *   "model": {"type": "scalar_integrator" | "double_integrator"
 *             | "single_track", "dt": 0.1, "wheelbase": 2.0},
 *   "horizon": 10,
 *   "x0": [..n_x..],
 *   "formula": "F[0,10](gate & F[1,10](gate))",
 *   "predicates": {
 *     "gate": {"type": "affine", "coefficients": [-1.0], "offset": 1.0},
 *     "zone": {"type": "circle_inside", "center": [0,0], "radius": 1.0,
 *              "indices": [0,1]}
 *   },
 *   "terminal_cost": {"type": "zero" | "linear" | "quadratic",
 *                     "coefficients": [...],        (linear: c . x)
 *                     "weights": [...], "target": [...]}, (quadratic:
 *                      sum_i w_i (x_i - t_i)^2)
 *   "stage_cost": same schema as terminal_cost,
 *   "solver": {"iterations": J, "samples": M, "shrink": nu,
 *              "covariance": s (means s*I) | [diag] | [[rows]],
 *              "temperature": lambda,
 *              "stl_weight": gamma,
 *              "mode": "penalize_violation" | "maximize_satisfaction",
 *              "seed": 0, "initial_inputs": [[..n_u..] x K]}
 * }
 */
ProblemSpec load_problem(const nlohmann::ordered_json& doc);
ProblemSpec load_problem_file(const std::string& path);

/*
 * Applies `key=value` overrides to a problem document before loading.
 * Keys are dotted paths into the schema; bare solver keys and the short
 * aliases J, M, nu, lambda, gamma, sigma, K are accepted
 * (e.g. "J=25", "solver.seed=7", "sigma=[[0.1,0],[0,0.1]]", "x0=[2,2,0,0]").
 * Values are parsed as JSON when possible and as strings otherwise.
 */
nlohmann::ordered_json apply_overrides(
    nlohmann::ordered_json doc, const std::vector<std::string>& overrides);

struct TrajectoryData {
  Eigen::MatrixXd states;  // n_x x (K+1)
  Eigen::MatrixXd inputs;  // n_u x K
};

/*
 * CSV with header k,t,x0..x{n_x-1},u0..u{n_u-1}; one row per step, input
 * fields left blank on the final row. Doubles are written in shortest
 * round-trip form, so write followed by read restores every value exactly.
 */
std::string write_trajectory_csv(const Eigen::MatrixXd& states,
                                 const Eigen::MatrixXd& inputs, double dt);
TrajectoryData read_trajectory_csv(const std::string& text, int state_dim,
                                   int input_dim);

// Everything a run produced, as the JSON written next to the trajectory.
// Identical runs serialize identically except for wall_clock_ms.
nlohmann::ordered_json make_run_record(const ProblemSpec& spec,
                                       const SolveResult& result,
                                       double wall_clock_ms);

// Robustness report for an externally supplied trajectory: overall rho and
// satisfaction plus one entry per top-level conjunct of the formula.
nlohmann::ordered_json make_eval_report(const ProblemSpec& spec,
                                        const Eigen::MatrixXd& states);

}  // namespace stlpi

#endif  // STLPI_PROBLEM_IO_HPP
