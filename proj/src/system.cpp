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
#include "stlpi/system.hpp"

#include <cmath>
#include <stdexcept>

namespace stlpi {

Eigen::MatrixXd rollout(const System& system, const Eigen::VectorXd& x0,
                        const Eigen::MatrixXd& inputs) {
  if (!system.step) {
    throw std::invalid_argument("system has no step function");
  }
  if (x0.size() != system.state_dim) {
    throw std::invalid_argument("initial state dimension mismatch");
  }
  if (inputs.rows() != system.input_dim) {
    throw std::invalid_argument("input dimension mismatch");
  }
  const int K = static_cast<int>(inputs.cols());
  Eigen::MatrixXd states(system.state_dim, K + 1);
  states.col(0) = x0;
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd next = system.step(states.col(k), inputs.col(k));
    if (next.size() != system.state_dim) {
      throw std::runtime_error("system step returned a wrong-sized state");
    }
    states.col(k + 1) = next;
  }
  return states;
}

System augment_with_history(const System& system, int horizon) {
  if (horizon < 0) {
    throw std::invalid_argument("horizon must be >= 0");
  }
  const int n = system.state_dim;
  const int blocks = horizon + 1;
  System out;
  out.state_dim = n * blocks;
  out.input_dim = system.input_dim;
  out.dt = system.dt;
  out.step = [inner = system.step, n, blocks](const Eigen::VectorXd& xa,
                                              const Eigen::VectorXd& u) {
    Eigen::VectorXd next(n * blocks);
    next.head(n) = inner(xa.head(n), u);
    next.segment(n, n * (blocks - 1)) = xa.head(n * (blocks - 1));
    return next;
  };
  return out;
}

Eigen::VectorXd augmented_initial_state(const Eigen::VectorXd& x0,
                                        int horizon) {
  if (horizon < 0) {
    throw std::invalid_argument("horizon must be >= 0");
  }
  Eigen::VectorXd xa = Eigen::VectorXd::Zero(x0.size() * (horizon + 1));
  xa.head(x0.size()) = x0;
  return xa;
}

System scalar_integrator() {
  System s;
  s.state_dim = 1;
  s.input_dim = 1;
  s.dt = 1.0;
  s.step = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd next(1);
    next[0] = x[0] + u[0];
    return next;
  };
  return s;
}

System double_integrator(double dt) {
  if (dt <= 0.0) {
    throw std::invalid_argument("dt must be > 0");
  }
  System s;
  s.state_dim = 4;
  s.input_dim = 2;
  s.dt = dt;
  s.step = [dt](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    Eigen::VectorXd next(4);
    next[0] = x[0] + x[2] * dt + 0.5 * u[0] * dt * dt;
    next[1] = x[1] + x[3] * dt + 0.5 * u[1] * dt * dt;
    next[2] = x[2] + u[0] * dt;
    next[3] = x[3] + u[1] * dt;
    return next;
  };
  return s;
}

System single_track(double dt, double wheelbase) {
  if (dt <= 0.0) {
    throw std::invalid_argument("dt must be > 0");
  }
  if (wheelbase <= 0.0) {
    throw std::invalid_argument("wheelbase must be > 0");
  }
  System s;
  s.state_dim = 5;
  s.input_dim = 2;
  s.dt = dt;
  s.step = [dt, wheelbase](const Eigen::VectorXd& x,
                           const Eigen::VectorXd& u) {
    const double steering = x[2];
    const double speed = x[3];
    const double heading = x[4];
    Eigen::VectorXd next(5);
    next[0] = x[0] + dt * speed * std::cos(heading);
    next[1] = x[1] + dt * speed * std::sin(heading);
    next[2] = x[2] + dt * u[0];
    next[3] = x[3] + dt * u[1];
    next[4] = x[4] + dt * speed / wheelbase * std::tan(steering);
    return next;
  };
  return s;
}

}  // namespace stlpi
