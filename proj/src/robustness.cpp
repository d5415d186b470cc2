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
#include "stlpi/robustness.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace stlpi {

namespace {

constexpr double kTop = std::numeric_limits<double>::max();
constexpr double kBottom = std::numeric_limits<double>::lowest();

void check_signal(const Eigen::MatrixXd& states, int k) {
  if (states.cols() < 1) {
    throw std::invalid_argument("signal must contain at least one step");
  }
  if (k < 0 || k >= states.cols()) {
    throw std::out_of_range("evaluation step is outside the signal");
  }
}

}  // namespace

CompiledFormula::CompiledFormula(Formula formula)
    : formula_(std::move(formula)) {
  flatten(formula_);
}

int CompiledFormula::flatten(const Formula& f) {
  std::vector<int> rows;
  rows.reserve(f.children().size());
  for (const auto& child : f.children()) rows.push_back(flatten(child));

  Instruction ins;
  ins.kind = f.kind();
  switch (f.kind()) {
    case Formula::Kind::kEventually:
    case Formula::Kind::kGlobally:
    case Formula::Kind::kUntil:
      ins.kmin = f.window().kmin;
      ins.kmax = f.window().kmax;
      break;
    case Formula::Kind::kPredicate:
      ins.pred = &f.predicate();
      break;
    default:
      break;
  }
  ins.first_child = static_cast<int>(child_rows_.size());
  ins.child_count = static_cast<int>(rows.size());
  child_rows_.insert(child_rows_.end(), rows.begin(), rows.end());
  instructions_.push_back(ins);
  return static_cast<int>(instructions_.size()) - 1;
}

double CompiledFormula::evaluate(const Eigen::MatrixXd& states, int k) const {
  std::vector<double> table;
  return evaluate(states, k, table);
}

double CompiledFormula::evaluate(const Eigen::MatrixXd& states, int k,
                                 std::vector<double>& table) const {
  check_signal(states, k);
  const int K = static_cast<int>(states.cols()) - 1;
  const int steps = K + 1;
  table.assign(instructions_.size() * steps, 0.0);

  for (size_t i = 0; i < instructions_.size(); ++i) {
    const Instruction& ins = instructions_[i];
    double* row = table.data() + i * steps;
    auto child = [&](int c) {
      return table.data() + child_rows_[ins.first_child + c] * steps;
    };
    switch (ins.kind) {
      case Formula::Kind::kTrue:
        std::fill(row, row + steps, kTop);
        break;
      case Formula::Kind::kPredicate:
        for (int j = 0; j < steps; ++j) row[j] = (*ins.pred)(states, j);
        break;
      case Formula::Kind::kNot: {
        const double* a = child(0);
        for (int j = 0; j < steps; ++j) row[j] = -a[j];
        break;
      }
      case Formula::Kind::kAnd:
      case Formula::Kind::kOr: {
        const bool is_and = ins.kind == Formula::Kind::kAnd;
        const double* a = child(0);
        std::copy(a, a + steps, row);
        for (int c = 1; c < ins.child_count; ++c) {
          const double* b = child(c);
          for (int j = 0; j < steps; ++j) {
            row[j] = is_and ? std::min(row[j], b[j]) : std::max(row[j], b[j]);
          }
        }
        break;
      }
      case Formula::Kind::kEventually:
      case Formula::Kind::kGlobally: {
        const bool is_ev = ins.kind == Formula::Kind::kEventually;
        const double* a = child(0);
        if (ins.kmax >= K) {
          // The clipped window reaches the end of the signal at every step,
          // so one right-to-left running extremum fills the whole row.
          double acc = is_ev ? kBottom : kTop;
          for (int j = steps - 1; j >= 0; --j) {
            const int lo = j + ins.kmin;
            if (lo > K) {
              row[j] = is_ev ? kBottom : kTop;
              continue;
            }
            acc = is_ev ? std::max(acc, a[lo]) : std::min(acc, a[lo]);
            row[j] = acc;
          }
          break;
        }
        for (int j = 0; j < steps; ++j) {
          const int lo = j + ins.kmin;
          const int hi = std::min(j + ins.kmax, K);
          if (lo > hi) {
            row[j] = is_ev ? kBottom : kTop;
            continue;
          }
          double acc = a[lo];
          for (int jj = lo + 1; jj <= hi; ++jj) {
            acc = is_ev ? std::max(acc, a[jj]) : std::min(acc, a[jj]);
          }
          row[j] = acc;
        }
        break;
      }
      case Formula::Kind::kUntil: {
        const double* lhs = child(0);
        const double* rhs = child(1);
        for (int j = 0; j < steps; ++j) {
          const int lo = j + ins.kmin;
          const int hi = std::min(j + ins.kmax, K);
          if (lo > hi) {
            row[j] = kBottom;
            continue;
          }
          // prefix holds min of lhs over [j, jj] while jj sweeps the window;
          // the lhs is required up to and including the witness step.
          double prefix = kTop;
          double best = kBottom;
          for (int jj = j; jj <= hi; ++jj) {
            prefix = std::min(prefix, lhs[jj]);
            if (jj >= lo) best = std::max(best, std::min(rhs[jj], prefix));
          }
          row[j] = best;
        }
        break;
      }
    }
  }
  return table[(instructions_.size() - 1) * steps + k];
}

double robustness(const Formula& formula, const Eigen::MatrixXd& states,
                  int k) {
  return CompiledFormula(formula).evaluate(states, k);
}

bool satisfies(const Formula& formula, const Eigen::MatrixXd& states, int k) {
  return robustness(formula, states, k) > 0.0;
}

bool satisfies_boolean(const Formula& formula, const Eigen::MatrixXd& states,
                       int k) {
  check_signal(states, k);
  const int K = static_cast<int>(states.cols()) - 1;
  using Kind = Formula::Kind;
  switch (formula.kind()) {
    case Kind::kTrue:
      return true;
    case Kind::kPredicate:
      return formula.predicate()(states, k) > 0.0;
    case Kind::kNot:
      return !satisfies_boolean(formula.children()[0], states, k);
    case Kind::kAnd:
      for (const auto& child : formula.children()) {
        if (!satisfies_boolean(child, states, k)) return false;
      }
      return true;
    case Kind::kOr:
      for (const auto& child : formula.children()) {
        if (satisfies_boolean(child, states, k)) return true;
      }
      return false;
    case Kind::kEventually:
    case Kind::kGlobally: {
      const int lo = k + formula.window().kmin;
      const int hi = std::min(k + formula.window().kmax, K);
      const bool is_ev = formula.kind() == Kind::kEventually;
      for (int kk = lo; kk <= hi; ++kk) {
        const bool hit = satisfies_boolean(formula.children()[0], states, kk);
        if (is_ev && hit) return true;
        if (!is_ev && !hit) return false;
      }
      return !is_ev;  // empty window: G holds, F does not
    }
    case Kind::kUntil: {
      const int lo = k + formula.window().kmin;
      const int hi = std::min(k + formula.window().kmax, K);
      for (int kk = lo; kk <= hi; ++kk) {
        if (!satisfies_boolean(formula.children()[1], states, kk)) continue;
        bool lhs_holds = true;
        for (int jj = k; jj <= kk; ++jj) {
          if (!satisfies_boolean(formula.children()[0], states, jj)) {
            lhs_holds = false;
            break;
          }
        }
        if (lhs_holds) return true;
      }
      return false;
    }
  }
  throw std::logic_error("unreachable formula kind");
}

double robustness_cost(double rho, RobustnessCostMode mode) {
  switch (mode) {
    case RobustnessCostMode::kMaximizeSatisfaction:
      return -rho;
    case RobustnessCostMode::kPenalizeViolationOnly:
      return -std::min(0.0, rho);
  }
  throw std::logic_error("unreachable robustness cost mode");
}

}  // namespace stlpi
