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
#ifndef STLPI_SOLVER_HPP
#define STLPI_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "stlpi/robustness.hpp"
#include "stlpi/system.hpp"

namespace stlpi {

// Scalar cost of a single state vector.
using StateCostFn = std::function<double(const Eigen::VectorXd&)>;

struct IterationDiagnostics {
  int iteration = 0;          // 0-based index j
  double weighted_cost = 0;   // sum_m omega^m S^m
  double best_cost = 0;       // psi = min_m S^m
  double effective_samples = 0;  // 1 / sum_m (omega^m)^2
  double temperature = 0;     // lambda used in this iteration
  double covariance_scale = 0;   // variance scale s with Sigma = s * Sigma_init
  int64_t clamped_samples = 0;   // samples whose cost was non-finite
};

struct SolverConfig {
  int iterations = 1;   // shrink steps J
  int samples = 1;      // rollouts per iteration M
  double shrink = 0.5;  // nu in (0, 1)
  Eigen::MatrixXd covariance;  // Sigma, n_u x n_u symmetric positive definite
  double temperature = 1.0;    // lambda > 0
  double stl_weight = 1.0;     // gamma > 0
  RobustnessCostMode mode = RobustnessCostMode::kPenalizeViolationOnly;
  Eigen::MatrixXd initial_inputs;  // n_u x K; empty means zeros
  uint64_t seed = 0;
  StateCostFn stage_cost;     // c(x_k); empty means 0
  StateCostFn terminal_cost;  // E(x_K); empty means 0
  // Called after each iteration; returning true stops the solve early.
  std::function<bool(const IterationDiagnostics&)> on_iteration;
};

struct SolveResult {
  Eigen::MatrixXd inputs;  // u*, n_u x K
  Eigen::MatrixXd states;  // x* = rollout(model, x0, u*), n_x x (K+1)
  std::vector<IterationDiagnostics> iterations;
  double final_cost = 0;        // objective(states, inputs) below
  double final_robustness = 0;  // rho at step 0 on states
  int64_t clamped_samples_total = 0;
};

/*
 * Full objective of a candidate trajectory:
 *
 *   gamma * robustness_cost(rho(x, 0), mode)
 *   + sum_{k=0}^{K-1} [ c(x_k) + 1/2 u_k' R u_k ]
 *   + E(x_K)
 *
 * with R = lambda * Sigma^{-1} taken from the config. This is the quantity
 * the sampler minimizes and the one reported as final_cost.
 */
double trajectory_objective(const Eigen::MatrixXd& states,
                            const Eigen::MatrixXd& inputs,
                            const CompiledFormula& formula,
                            const SolverConfig& config);

struct WeightStats {
  Eigen::VectorXd weights;  // simplex weights, one per sample
  double baseline = 0;      // psi = min finite cost
  double normalizer = 0;    // eta = sum of unnormalized weights
};

// Softmax weights omega^m = exp(-(S^m - psi)/lambda) / eta. Non-finite
// costs are treated as the largest finite value; throws when no cost is
// finite or the list is empty.
WeightStats compute_weights(const Eigen::VectorXd& costs, double temperature);

/*
 * Path-integral solve with variance shrinking. Each of the J iterations
 * draws M input perturbations around the running mean, scores the rollouts
 * with the objective above plus the importance-weighting correction
 * lambda * eps_k' Sigma^{-1} u_k per step, averages the perturbations with
 * softmax weights, and then multiplies both lambda and Sigma by nu.
 *
 * The noise stream is keyed by (seed, iteration, sample, step), and all
 * reductions run in ascending sample order, so results are bit-identical
 * for a given config regardless of thread count. The STLPI_THREADS
 * environment variable caps the number of worker threads.
 *
 * Samples whose cost comes out non-finite are clamped to the largest
 * finite double and counted; an iteration in which every sample is
 * non-finite raises std::runtime_error.
 */
SolveResult solve(const System& model, const Eigen::VectorXd& x0,
                  const Formula& formula, const SolverConfig& config,
                  int horizon);

}  // namespace stlpi

#endif  // STLPI_SOLVER_HPP
