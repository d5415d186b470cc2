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
#ifndef STLPI_SYSTEM_HPP
#define STLPI_SYSTEM_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace stlpi {

/*
 * Deterministic discrete-time system x_{k+1} = f(x_k, u_k). dt is the
 * physical length of one step; the step map itself is already discrete.
 */
struct System {
  using StepFn =
      std::function<Eigen::VectorXd(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& u)>;

  int state_dim = 0;
  int input_dim = 0;
  double dt = 1.0;
  StepFn step;
};

// Simulates K steps from x0 under the input sequence (one column per step).
// Returns the state trajectory as an n_x x (K+1) matrix with x0 in column 0.
Eigen::MatrixXd rollout(const System& system, const Eigen::VectorXd& x0,
                        const Eigen::MatrixXd& inputs);

/*
 * History-augmented view of a system over a fixed horizon K. The augmented
 * state stacks the current state on top of all past states, newest first,
 * padded with zeros up to the full horizon:
 *
 *   xa_k = [x_k; x_{k-1}; ...; x_0; 0; ...; 0]   with (K+1) blocks of n_x.
 *
 * One augmented step shifts the history down by one block and writes
 * f(x_k, u_k) into the top block, turning trajectory-dependent costs into
 * ordinary state costs. The solver works on plain trajectories directly;
 * this construction exists for composing with tooling that expects a
 * Markovian state.
 */
System augment_with_history(const System& system, int horizon);

// Initial augmented state [x0; 0; ...; 0] for the given horizon.
Eigen::VectorXd augmented_initial_state(const Eigen::VectorXd& x0,
                                        int horizon);

// x + u with scalar state and input.
System scalar_integrator();

// Planar double integrator, state [px, py, vx, vy], input [ax, ay],
// discretized exactly under a zero-order hold of length dt.
System double_integrator(double dt);

// Kinematic single-track model, state [px, py, steering, speed, heading],
// input [steering rate, acceleration], explicit Euler step of length dt
// with the given wheelbase.
System single_track(double dt, double wheelbase);

}  // namespace stlpi

#endif  // STLPI_SYSTEM_HPP
