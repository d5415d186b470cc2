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
#ifndef STLPI_FORMULA_HPP
#define STLPI_FORMULA_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stlpi {

/*
 * Atomic predicate of the form b(x, k) >= 0. The callable receives the whole
 * state trajectory (one column per step) together with the step index, so
 * predicates may in principle look at any part of the signal, although the
 * built-in kinds only read column k.
 */
class Predicate {
 public:
  using CustomFn = std::function<double(const Eigen::MatrixXd& states, int k)>;

  // b(x, k) = coefficients . x_k + offset
  static Predicate affine(Eigen::VectorXd coefficients, double offset);

  // b(x, k) = radius^2 - (x_k[ix] - cx)^2 - (x_k[iy] - cy)^2, positive inside
  // the disc of the given radius around (cx, cy).
  static Predicate circle_inside(double cx, double cy, double radius,
                                 int ix = 0, int iy = 1);

  static Predicate custom(CustomFn fn);

  double operator()(const Eigen::MatrixXd& states, int k) const;

  // True when both predicates are either the same object or built-in kinds
  // with identical parameters. Custom predicates compare by identity only.
  friend bool same_definition(const Predicate& a, const Predicate& b);

 private:
  enum class Kind { kAffine, kCircleInside, kCustom };

  struct Impl {
    Kind kind;
    Eigen::VectorXd coefficients;  // affine
    double offset = 0.0;           // affine
    double cx = 0.0, cy = 0.0, r = 0.0;
    int ix = 0, iy = 1;
    CustomFn fn;
  };

  explicit Predicate(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/*
 * Discrete step window [kmin, kmax] attached to a temporal operator. Bounds
 * are relative offsets from the step at which the operator is evaluated.
 */
struct Interval {
  int kmin = 0;
  int kmax = 0;

  Interval() = default;
  Interval(int kmin_, int kmax_);

  friend bool operator==(const Interval&, const Interval&) = default;
};

/*
 * Immutable formula tree with value semantics; copies share nodes. Formulas
 * are built either with the static factories below or with parse_formula().
 */
class Formula {
 public:
  enum class Kind {
    kTrue,
    kPredicate,
    kNot,
    kAnd,
    kOr,
    kEventually,
    kGlobally,
    kUntil
  };

  static Formula verum();
  static Formula predicate(std::string name, Predicate pred);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> fs);
  static Formula disjunction(std::vector<Formula> fs);
  static Formula eventually(Interval window, Formula f);
  static Formula globally(Interval window, Formula f);
  static Formula until(Interval window, Formula lhs, Formula rhs);

  Kind kind() const { return node_->kind; }
  const Interval& window() const { return node_->window; }
  const std::string& predicate_name() const { return node_->name; }
  const Predicate& predicate() const { return *node_->pred; }
  const std::vector<Formula>& children() const { return node_->children; }

  // Textual form that parses back to a structurally equal formula.
  std::string to_string() const;

  // Structural comparison; predicates compare by name.
  friend bool structurally_equal(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    Interval window;
    std::string name;
    std::optional<Predicate> pred;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

}  // namespace stlpi

#endif  // STLPI_FORMULA_HPP
