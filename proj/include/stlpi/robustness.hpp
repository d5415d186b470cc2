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
#ifndef STLPI_ROBUSTNESS_HPP
#define STLPI_ROBUSTNESS_HPP

#include <vector>

#include "stlpi/formula.hpp"

namespace stlpi {

// How a robustness value turns into a scalar cost term.
enum class RobustnessCostMode {
  // -rho: rewards margin beyond bare satisfaction.
  kMaximizeSatisfaction,
  // -min(0, rho): zero once satisfied, positive while violating.
  kPenalizeViolationOnly
};

/*
 * Formula lowered to a flat post-order instruction list for repeated
 * evaluation. One evaluation fills a table with the robustness of every
 * subformula at every step of the signal, bottom up, so temporal windows
 * are read off previously finished rows.
 *
 * Window semantics over a signal with steps 0..K, evaluated at step k:
 * the window [k + kmin, k + kmax] is clipped to [0, K]. An empty clipped
 * window makes "eventually" and "until" -DBL_MAX and "globally" +DBL_MAX.
 * The constant "true" evaluates to +DBL_MAX everywhere.
 */
class CompiledFormula {
 public:
  explicit CompiledFormula(Formula formula);

  // Robustness of the formula on the given signal (states has one column
  // per step) at step k. Throws std::out_of_range unless 0 <= k <= K.
  double evaluate(const Eigen::MatrixXd& states, int k) const;

  // As above, reusing caller-owned scratch space across calls.
  double evaluate(const Eigen::MatrixXd& states, int k,
                  std::vector<double>& table) const;

  const Formula& formula() const { return formula_; }

 private:
  struct Instruction {
    Formula::Kind kind;
    int kmin = 0, kmax = 0;
    int first_child = 0;   // index into child_rows_
    int child_count = 0;
    const Predicate* pred = nullptr;
  };

  int flatten(const Formula& f);

  Formula formula_;  // keeps predicate storage alive
  std::vector<Instruction> instructions_;
  std::vector<int> child_rows_;
};

// One-shot helper; compiles on every call.
double robustness(const Formula& formula, const Eigen::MatrixXd& states,
                  int k = 0);

// robustness(formula, states, k) > 0. A robustness of exactly zero counts
// as non-satisfying.
bool satisfies(const Formula& formula, const Eigen::MatrixXd& states,
               int k = 0);

// Boolean satisfaction computed directly on the tree, with and/or/not in
// place of min/max and a strict b > 0 test at predicates. Agrees with
// sign(robustness) away from the zero boundary.
bool satisfies_boolean(const Formula& formula, const Eigen::MatrixXd& states,
                       int k = 0);

// Cost contribution of robustness value rho under the given mode.
double robustness_cost(double rho, RobustnessCostMode mode);

}  // namespace stlpi

#endif  // STLPI_ROBUSTNESS_HPP
