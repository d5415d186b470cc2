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
#include "stlpi/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "stlpi/noise.hpp"

namespace stlpi {

namespace {

constexpr double kMaxCost = std::numeric_limits<double>::max();

void check_config(const System& model, const Eigen::VectorXd& x0,
                  const SolverConfig& config, int horizon) {
  if (!model.step) throw std::invalid_argument("model has no step function");
  if (x0.size() != model.state_dim) {
    throw std::invalid_argument("initial state dimension mismatch");
  }
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (config.iterations < 1) {
    throw std::invalid_argument("iterations must be >= 1");
  }
  if (config.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(config.shrink > 0.0 && config.shrink < 1.0)) {
    throw std::invalid_argument("shrink factor must lie in (0, 1)");
  }
  if (!(config.temperature > 0.0)) {
    throw std::invalid_argument("temperature must be > 0");
  }
  if (!(config.stl_weight > 0.0)) {
    throw std::invalid_argument("stl weight must be > 0");
  }
  if (config.covariance.rows() != model.input_dim ||
      config.covariance.cols() != model.input_dim) {
    throw std::invalid_argument("covariance must be n_u x n_u");
  }
  if (config.initial_inputs.size() != 0 &&
      (config.initial_inputs.rows() != model.input_dim ||
       config.initial_inputs.cols() != horizon)) {
    throw std::invalid_argument("initial inputs must be n_u x K");
  }
}

int thread_count(int samples) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int threads = static_cast<int>(hw);
  if (const char* env = std::getenv("STLPI_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    // An explicit setting wins over the detected core count so that runs
    // can be checked for thread-count invariance on any machine.
    if (end != env && parsed > 0) {
      threads = static_cast<int>(std::min<long>(parsed, 256));
    }
  }
  return std::max(1, std::min(threads, samples));
}

// Runs fn(begin, end) over a partition of [0, M) on up to `threads` threads.
// Chunk boundaries depend only on M and the thread count, and every chunk
// writes disjoint output slots, so the caller stays deterministic as long
// as it reduces those slots in a fixed order afterwards.
void parallel_chunks(int total, int threads,
                     const std::function<void(int, int)>& fn) {
  if (threads <= 1) {
    fn(0, total);
    return;
  }
  const int chunk = (total + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int t = 0; t < threads; ++t) {
    const int begin = t * chunk;
    const int end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

double trajectory_objective(const Eigen::MatrixXd& states,
                            const Eigen::MatrixXd& inputs,
                            const CompiledFormula& formula,
                            const SolverConfig& config) {
  const int K = static_cast<int>(inputs.cols());
  if (states.cols() != K + 1) {
    throw std::invalid_argument("states must have one more column than inputs");
  }
  const Eigen::MatrixXd precision =
      Eigen::LLT<Eigen::MatrixXd>(config.covariance)
          .solve(Eigen::MatrixXd::Identity(config.covariance.rows(),
                                           config.covariance.cols()));
  const Eigen::MatrixXd penalty = config.temperature * precision;

  const double rho = formula.evaluate(states, 0);
  double cost = config.stl_weight * robustness_cost(rho, config.mode);
  for (int k = 0; k < K; ++k) {
    if (config.stage_cost) cost += config.stage_cost(states.col(k));
    cost += 0.5 * inputs.col(k).dot(penalty * inputs.col(k));
  }
  if (config.terminal_cost) cost += config.terminal_cost(states.col(K));
  return cost;
}

WeightStats compute_weights(const Eigen::VectorXd& costs, double temperature) {
  if (costs.size() < 1) {
    throw std::invalid_argument("weights need at least one cost");
  }
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("temperature must be > 0");
  }
  double baseline = kMaxCost;
  bool any_finite = false;
  for (Eigen::Index m = 0; m < costs.size(); ++m) {
    const double c = std::isfinite(costs[m]) ? costs[m] : kMaxCost;
    if (std::isfinite(costs[m])) any_finite = true;
    baseline = std::min(baseline, c);
  }
  if (!any_finite) {
    throw std::runtime_error("every sample cost is non-finite");
  }
  WeightStats out;
  out.baseline = baseline;
  out.weights.resize(costs.size());
  double eta = 0.0;
  for (Eigen::Index m = 0; m < costs.size(); ++m) {
    const double c = std::isfinite(costs[m]) ? costs[m] : kMaxCost;
    out.weights[m] = std::exp(-(c - baseline) / temperature);
    eta += out.weights[m];
  }
  out.normalizer = eta;
  out.weights /= eta;
  return out;
}

SolveResult solve(const System& model, const Eigen::VectorXd& x0,
                  const Formula& formula, const SolverConfig& config,
                  int horizon) {
  check_config(model, x0, config, horizon);

  const int K = horizon;
  const int n_u = model.input_dim;
  const int n_x = model.state_dim;
  const int M = config.samples;

  const Eigen::MatrixXd chol = cholesky_factor(config.covariance);
  const Eigen::MatrixXd precision =
      Eigen::LLT<Eigen::MatrixXd>(config.covariance)
          .solve(Eigen::MatrixXd::Identity(n_u, n_u));
  const CompiledFormula compiled(formula);

  Eigen::MatrixXd mean = config.initial_inputs.size() != 0
                             ? config.initial_inputs
                             : Eigen::MatrixXd::Zero(n_u, K);

  double temperature = config.temperature;   // lambda_j
  double variance_scale = 1.0;               // s_j with Sigma_j = s_j * Sigma
  SolveResult result;
  result.iterations.reserve(config.iterations);

  // Noise of sample m lives at noise[m * K * n_u + k * n_u + i].
  std::vector<double> noise(static_cast<size_t>(M) * K * n_u);
  Eigen::VectorXd costs(M);
  const int threads = thread_count(M);

  for (int j = 0; j < config.iterations; ++j) {
    const double std_scale = std::sqrt(variance_scale);
    // lambda_j * Sigma_j^{-1} = (lambda_j / s_j) * Sigma^{-1}
    const double correction_scale = temperature / variance_scale;
    const Eigen::MatrixXd precision_mean = precision * mean;
    std::atomic<int64_t> clamped{0};

    parallel_chunks(M, threads, [&](int begin, int end) {
      Eigen::MatrixXd states(n_x, K + 1);
      Eigen::VectorXd z(n_u), eps(n_u);
      std::vector<double> scratch;
      int64_t local_clamped = 0;
      for (int m = begin; m < end; ++m) {
        double* eps_base =
            noise.data() + static_cast<size_t>(m) * K * n_u;
        double cost = 0.0;
        states.col(0) = x0;
        for (int k = 0; k < K; ++k) {
          NoiseStream stream(config.seed, static_cast<uint64_t>(j),
                             static_cast<uint64_t>(m),
                             static_cast<uint64_t>(k));
          for (int i = 0; i < n_u; ++i) z[i] = stream.next_normal();
          eps.noalias() = chol * z;
          eps *= std_scale;
          for (int i = 0; i < n_u; ++i) eps_base[k * n_u + i] = eps[i];

          if (config.stage_cost) cost += config.stage_cost(states.col(k));
          cost += correction_scale * eps.dot(precision_mean.col(k));
          states.col(k + 1) = model.step(states.col(k), mean.col(k) + eps);
        }
        if (config.terminal_cost) cost += config.terminal_cost(states.col(K));
        const double rho = compiled.evaluate(states, 0, scratch);
        cost +=
            config.stl_weight * robustness_cost(rho, config.mode);
        if (!std::isfinite(cost)) {
          cost = kMaxCost;
          ++local_clamped;
        }
        costs[m] = cost;
      }
      clamped += local_clamped;
    });

    if (clamped.load() == M) {
      throw std::runtime_error(
          "every sample cost was non-finite; check predicates and dynamics");
    }

    const WeightStats weights = compute_weights(costs, temperature);

    // Weighted noise average, accumulated in ascending sample order.
    for (int m = 0; m < M; ++m) {
      const double w = weights.weights[m];
      const double* eps_base =
          noise.data() + static_cast<size_t>(m) * K * n_u;
      for (int k = 0; k < K; ++k) {
        for (int i = 0; i < n_u; ++i) {
          mean(i, k) += w * eps_base[k * n_u + i];
        }
      }
    }

    IterationDiagnostics diag;
    diag.iteration = j;
    diag.best_cost = weights.baseline;
    double weighted_cost = 0.0;
    double sum_sq = 0.0;
    for (int m = 0; m < M; ++m) {
      weighted_cost += weights.weights[m] * costs[m];
      sum_sq += weights.weights[m] * weights.weights[m];
    }
    diag.weighted_cost = weighted_cost;
    diag.effective_samples = 1.0 / sum_sq;
    diag.temperature = temperature;
    diag.covariance_scale = variance_scale;
    diag.clamped_samples = clamped.load();
    result.iterations.push_back(diag);
    result.clamped_samples_total += diag.clamped_samples;

    temperature *= config.shrink;
    variance_scale *= config.shrink;

    // R = lambda * Sigma^{-1} must stay put under the shrink.
    const double drift =
        std::abs(temperature / variance_scale - config.temperature) /
        config.temperature;
    if (drift > 1e-9) {
      throw std::logic_error("lambda/Sigma ratio drifted during shrinking");
    }

    if (config.on_iteration && config.on_iteration(diag)) break;
  }

  result.inputs = std::move(mean);
  result.states = rollout(model, x0, result.inputs);
  result.final_robustness = compiled.evaluate(result.states, 0);
  result.final_cost =
      trajectory_objective(result.states, result.inputs, compiled, config);
  return result;
}

}  // namespace stlpi
