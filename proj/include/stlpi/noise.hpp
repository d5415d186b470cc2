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
#ifndef STLPI_NOISE_HPP
#define STLPI_NOISE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace stlpi {

// splitmix64 output finalizer.
inline uint64_t mix64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/*
 * Counter-based Gaussian stream keyed by (seed, iteration, sample, step).
 * The key is hashed into a splitmix64 state, so a given key always yields
 * the same sequence of draws no matter which thread asks for it or in what
 * order streams are consumed.
 */
class NoiseStream {
 public:
  NoiseStream(uint64_t seed, uint64_t iteration, uint64_t sample,
              uint64_t step) {
    state_ = mix64(seed ^ 0x6A09E667F3BCC909ULL);
    state_ = mix64(state_ ^ (iteration * 0x9E3779B97F4A7C15ULL));
    state_ = mix64(state_ ^ (sample * 0xC2B2AE3D27D4EB4FULL));
    state_ = mix64(state_ ^ (step * 0x165667B19E3779F9ULL));
  }

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Standard normal draw via the Box-Muller transform; pairs are consumed
  // one value at a time.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite, u2 in [0, 1).
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Correlated noise draw eps = std_scale * L * z with z standard normal from
// the stream keyed by (seed, iteration, sample, step) and L a lower
// Cholesky factor. Scaling std_scale by a factor scales the result by the
// same factor exactly, with identical underlying normals.
inline Eigen::VectorXd sample_noise(uint64_t seed, uint64_t iteration,
                                    uint64_t sample, uint64_t step,
                                    const Eigen::MatrixXd& chol_lower,
                                    double std_scale = 1.0) {
  NoiseStream stream(seed, iteration, sample, step);
  Eigen::VectorXd z(chol_lower.cols());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = stream.next_normal();
  return std_scale * (chol_lower * z).eval();
}

// Lower Cholesky factor of a symmetric positive definite covariance.
// Throws std::invalid_argument when the factorization fails.
inline Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& covariance) {
  if (covariance.rows() != covariance.cols() || covariance.rows() < 1) {
    throw std::invalid_argument("covariance must be square and non-empty");
  }
  if (!covariance.isApprox(covariance.transpose())) {
    throw std::invalid_argument("covariance must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("covariance must be positive definite");
  }
  return llt.matrixL();
}

}  // namespace stlpi

#endif  // STLPI_NOISE_HPP
