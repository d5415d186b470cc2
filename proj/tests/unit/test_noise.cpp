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
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "stlpi/noise.hpp"

using stlpi::NoiseStream;
using stlpi::cholesky_factor;
using stlpi::sample_noise;

TEST_CASE("a fixed key always produces the same draws") {
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::VectorXd a = sample_noise(7, 2, 13, 5, eye);
  const Eigen::VectorXd b = sample_noise(7, 2, 13, 5, eye);
  REQUIRE(a.size() == 3);
  CHECK(a == b);

  // Each key component changes the stream.
  CHECK_FALSE(sample_noise(8, 2, 13, 5, eye) == a);
  CHECK_FALSE(sample_noise(7, 3, 13, 5, eye) == a);
  CHECK_FALSE(sample_noise(7, 2, 14, 5, eye) == a);
  CHECK_FALSE(sample_noise(7, 2, 13, 6, eye) == a);
}

TEST_CASE("streams with one key replay the same normal sequence") {
  NoiseStream first(1, 2, 3, 4);
  NoiseStream second(1, 2, 3, 4);
  for (int i = 0; i < 16; ++i) {
    CHECK(first.next_normal() == second.next_normal());
  }
}

TEST_CASE("draws from diag(4) have standard deviation 2") {
  const Eigen::MatrixXd cov = 4.0 * Eigen::MatrixXd::Identity(1, 1);
  const Eigen::MatrixXd chol = cholesky_factor(cov);
  CHECK(chol(0, 0) == 2.0);

  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int m = 0; m < n; ++m) {
    const double draw = sample_noise(0, 0, m, 0, chol)[0];
    sum += draw;
    sum_sq += draw * draw;
  }
  const double mean = sum / n;
  const double std = std::sqrt(sum_sq / n - mean * mean);
  CHECK(std == doctest::Approx(2.0).epsilon(0.01));
  CHECK(std::abs(std - 2.0) < 0.02);
  CHECK(std::abs(mean) < 0.03);
}

TEST_CASE("scaling the factor scales every draw exactly") {
  Eigen::MatrixXd cov(2, 2);
  cov << 2.0, 0.5,
         0.5, 1.0;
  const Eigen::MatrixXd chol = cholesky_factor(cov);
  const double nu = 0.3;
  for (int m = 0; m < 32; ++m) {
    const Eigen::VectorXd base = sample_noise(9, 1, m, 2, chol);
    const Eigen::VectorXd scaled = sample_noise(9, 1, m, 2, chol, nu);
    // Same underlying standard normals, scaled after the correlation step.
    CHECK(scaled == nu * base);
  }
}

TEST_CASE("cholesky_factor reproduces the covariance") {
  Eigen::MatrixXd cov(2, 2);
  cov << 3.4, 0.0,
         0.0, 3.4;
  const Eigen::MatrixXd chol = cholesky_factor(cov);
  CHECK((chol * chol.transpose() - cov).norm() < 1e-12);
  CHECK(chol(0, 1) == 0.0);  // lower triangular
}

TEST_CASE("cholesky_factor rejects invalid covariances") {
  CHECK_THROWS_AS(cholesky_factor(Eigen::MatrixXd(0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cholesky_factor(Eigen::MatrixXd::Ones(2, 3)),
                  std::invalid_argument);

  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5,
          0.2, 1.0;
  CHECK_THROWS_AS(cholesky_factor(asym), std::invalid_argument);

  Eigen::MatrixXd negative(1, 1);
  negative << -1.0;
  CHECK_THROWS_AS(cholesky_factor(negative), std::invalid_argument);

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0,
                2.0, 1.0;
  CHECK_THROWS_AS(cholesky_factor(indefinite), std::invalid_argument);
}
