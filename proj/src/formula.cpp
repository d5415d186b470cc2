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
#include "stlpi/formula.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace stlpi {

Predicate Predicate::affine(Eigen::VectorXd coefficients, double offset) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kAffine;
  impl->coefficients = std::move(coefficients);
  impl->offset = offset;
  return Predicate(std::move(impl));
}

Predicate Predicate::circle_inside(double cx, double cy, double radius,
                                   int ix, int iy) {
  if (radius <= 0.0) {
    throw std::invalid_argument("circle_inside predicate needs radius > 0");
  }
  if (ix < 0 || iy < 0) {
    throw std::invalid_argument("circle_inside state indices must be >= 0");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kCircleInside;
  impl->cx = cx;
  impl->cy = cy;
  impl->r = radius;
  impl->ix = ix;
  impl->iy = iy;
  return Predicate(std::move(impl));
}

Predicate Predicate::custom(CustomFn fn) {
  if (!fn) {
    throw std::invalid_argument("custom predicate needs a callable");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kCustom;
  impl->fn = std::move(fn);
  return Predicate(std::move(impl));
}

double Predicate::operator()(const Eigen::MatrixXd& states, int k) const {
  const Impl& p = *impl_;
  switch (p.kind) {
    case Kind::kAffine: {
      if (p.coefficients.size() > states.rows()) {
        throw std::invalid_argument(
            "affine predicate has more coefficients than state entries");
      }
      return p.coefficients.dot(states.col(k).head(p.coefficients.size())) +
             p.offset;
    }
    case Kind::kCircleInside: {
      if (p.ix >= states.rows() || p.iy >= states.rows()) {
        throw std::invalid_argument(
            "circle_inside predicate indexes past the state dimension");
      }
      const double dx = states(p.ix, k) - p.cx;
      const double dy = states(p.iy, k) - p.cy;
      return p.r * p.r - dx * dx - dy * dy;
    }
    case Kind::kCustom:
      return p.fn(states, k);
  }
  throw std::logic_error("unreachable predicate kind");
}

bool same_definition(const Predicate& a, const Predicate& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.impl_->kind != b.impl_->kind) return false;
  const auto& pa = *a.impl_;
  const auto& pb = *b.impl_;
  switch (pa.kind) {
    case Predicate::Kind::kAffine:
      return pa.coefficients.size() == pb.coefficients.size() &&
             pa.coefficients == pb.coefficients && pa.offset == pb.offset;
    case Predicate::Kind::kCircleInside:
      return pa.cx == pb.cx && pa.cy == pb.cy && pa.r == pb.r &&
             pa.ix == pb.ix && pa.iy == pb.iy;
    case Predicate::Kind::kCustom:
      return false;  // distinct callables are never considered equal
  }
  return false;
}

Interval::Interval(int kmin_, int kmax_) : kmin(kmin_), kmax(kmax_) {
  if (kmin < 0) {
    throw std::invalid_argument("interval lower bound must be >= 0");
  }
  if (kmax < kmin) {
    throw std::invalid_argument("interval upper bound must be >= lower bound");
  }
}

namespace {

// Collects every named predicate of f into out, rejecting two uses of one
// name with different definitions.
void collect_predicates(const Formula& f,
                        std::map<std::string, Predicate>& out) {
  if (f.kind() == Formula::Kind::kPredicate) {
    auto it = out.find(f.predicate_name());
    if (it == out.end()) {
      out.emplace(f.predicate_name(), f.predicate());
    } else if (!same_definition(it->second, f.predicate())) {
      throw std::invalid_argument("predicate name '" + f.predicate_name() +
                                  "' is bound to two different definitions");
    }
    return;
  }
  for (const auto& child : f.children()) collect_predicates(child, out);
}

void check_predicate_names(const Formula& f) {
  std::map<std::string, Predicate> seen;
  collect_predicates(f, seen);
}

}  // namespace

Formula Formula::verum() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kTrue;
  return Formula(std::move(node));
}

Formula Formula::predicate(std::string name, Predicate pred) {
  if (name.empty()) {
    throw std::invalid_argument("predicate name must not be empty");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::kPredicate;
  node->name = std::move(name);
  node->pred = std::move(pred);
  return Formula(std::move(node));
}

Formula Formula::negation(Formula f) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kNot;
  node->children.push_back(std::move(f));
  return Formula(std::move(node));
}

Formula Formula::conjunction(std::vector<Formula> fs) {
  if (fs.empty()) {
    throw std::invalid_argument("conjunction needs at least one operand");
  }
  if (fs.size() == 1) return std::move(fs.front());
  auto node = std::make_shared<Node>();
  node->kind = Kind::kAnd;
  node->children = std::move(fs);
  Formula out(std::move(node));
  check_predicate_names(out);
  return out;
}

Formula Formula::disjunction(std::vector<Formula> fs) {
  if (fs.empty()) {
    throw std::invalid_argument("disjunction needs at least one operand");
  }
  if (fs.size() == 1) return std::move(fs.front());
  auto node = std::make_shared<Node>();
  node->kind = Kind::kOr;
  node->children = std::move(fs);
  Formula out(std::move(node));
  check_predicate_names(out);
  return out;
}

Formula Formula::eventually(Interval window, Formula f) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kEventually;
  node->window = window;
  node->children.push_back(std::move(f));
  return Formula(std::move(node));
}

Formula Formula::globally(Interval window, Formula f) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kGlobally;
  node->window = window;
  node->children.push_back(std::move(f));
  return Formula(std::move(node));
}

Formula Formula::until(Interval window, Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kUntil;
  node->window = window;
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  Formula out(std::move(node));
  check_predicate_names(out);
  return out;
}

namespace {

void print_formula(const Formula& f, std::ostringstream& os) {
  using Kind = Formula::Kind;
  // Parenthesizes a child when its textual form would re-associate under the
  // surrounding operator. And/Or are parsed as n-ary lists, so a nested node
  // of the parent's own kind must keep its parentheses to round trip into
  // the same tree shape, and Or under And would re-bind without them. And
  // under Or already binds tighter than '|' and needs none.
  auto print_child = [&os](const Formula& child, Kind parent) {
    const Kind ck = child.kind();
    const bool needs_parens =
        (ck == Kind::kOr && (parent == Kind::kAnd || parent == Kind::kOr)) ||
        (ck == Kind::kAnd && parent == Kind::kAnd);
    if (needs_parens) os << '(';
    print_formula(child, os);
    if (needs_parens) os << ')';
  };
  switch (f.kind()) {
    case Kind::kTrue:
      os << "true";
      return;
    case Kind::kPredicate:
      os << f.predicate_name();
      return;
    case Kind::kNot:
      os << '!';
      if (f.children()[0].kind() == Kind::kAnd ||
          f.children()[0].kind() == Kind::kOr) {
        os << '(';
        print_formula(f.children()[0], os);
        os << ')';
      } else {
        print_formula(f.children()[0], os);
      }
      return;
    case Kind::kAnd:
    case Kind::kOr: {
      const char* sep = f.kind() == Kind::kAnd ? " & " : " | ";
      for (size_t i = 0; i < f.children().size(); ++i) {
        if (i > 0) os << sep;
        print_child(f.children()[i], f.kind());
      }
      return;
    }
    case Kind::kEventually:
    case Kind::kGlobally:
      os << (f.kind() == Kind::kEventually ? 'F' : 'G') << '['
         << f.window().kmin << ',' << f.window().kmax << "](";
      print_formula(f.children()[0], os);
      os << ')';
      return;
    case Kind::kUntil:
      os << "U[" << f.window().kmin << ',' << f.window().kmax << "](";
      print_formula(f.children()[0], os);
      os << ", ";
      print_formula(f.children()[1], os);
      os << ')';
      return;
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::ostringstream os;
  print_formula(*this, os);
  return os.str();
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kTrue:
      return true;
    case Formula::Kind::kPredicate:
      return a.predicate_name() == b.predicate_name();
    case Formula::Kind::kEventually:
    case Formula::Kind::kGlobally:
    case Formula::Kind::kUntil:
      if (!(a.window() == b.window())) return false;
      break;
    default:
      break;
  }
  if (a.children().size() != b.children().size()) return false;
  for (size_t i = 0; i < a.children().size(); ++i) {
    if (!structurally_equal(a.children()[i], b.children()[i])) return false;
  }
  return true;
}

}  // namespace stlpi
