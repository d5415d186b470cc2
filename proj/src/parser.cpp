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
#include "stlpi/parser.hpp"

#include <cctype>
#include <vector>

namespace stlpi {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const PredicateTable& predicates)
      : text_(text), predicates_(predicates) {}

  Formula parse() {
    Formula f = parse_disjunct();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected trailing input", pos_);
    }
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek_is(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume_if(char c) {
    if (!peek_is(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c, const char* what) {
    if (!consume_if(c)) {
      throw ParseError(std::string("expected '") + c + "' " + what, pos_);
    }
  }

  int parse_int() {
    skip_space();
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError("expected a non-negative integer", pos_);
    }
    int value = 0;
    for (size_t i = start; i < pos_; ++i) {
      if (value > (INT_MAX_ - (text_[i] - '0')) / 10) {
        throw ParseError("window bound is out of range", start);
      }
      value = value * 10 + (text_[i] - '0');
    }
    return value;
  }

  std::string parse_ident() {
    skip_space();
    const size_t start = pos_;
    auto head = [](char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    };
    auto tail = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    if (pos_ >= text_.size() || !head(text_[pos_])) {
      throw ParseError("expected a formula", pos_);
    }
    ++pos_;
    while (pos_ < text_.size() && tail(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Interval parse_window() {
    const size_t start = pos_;
    expect('[', "to open the step window");
    const int kmin = parse_int();
    expect(',', "between window bounds");
    const int kmax = parse_int();
    expect(']', "to close the step window");
    if (kmax < kmin) {
      throw ParseError("window upper bound is smaller than lower bound",
                       start);
    }
    return Interval(kmin, kmax);
  }

  Formula parse_disjunct() {
    std::vector<Formula> terms;
    terms.push_back(parse_conjunct());
    while (consume_if('|')) terms.push_back(parse_conjunct());
    return Formula::disjunction(std::move(terms));
  }

  Formula parse_conjunct() {
    std::vector<Formula> terms;
    terms.push_back(parse_unary());
    while (consume_if('&')) terms.push_back(parse_unary());
    return Formula::conjunction(std::move(terms));
  }

  Formula parse_unary() {
    skip_space();
    if (consume_if('!')) return Formula::negation(parse_unary());
    if (consume_if('(')) {
      Formula f = parse_disjunct();
      expect(')', "to close the group");
      return f;
    }
    const size_t start = pos_;
    const std::string ident = parse_ident();
    const bool is_operator =
        (ident == "G" || ident == "F" || ident == "U") && pos_ < text_.size() &&
        text_[pos_] == '[';
    if (is_operator) {
      const Interval window = parse_window();
      expect('(', "to open the operator argument");
      Formula first = parse_disjunct();
      if (ident == "U") {
        expect(',', "between the two until arguments");
        Formula second = parse_disjunct();
        expect(')', "to close the operator argument");
        return Formula::until(window, std::move(first), std::move(second));
      }
      expect(')', "to close the operator argument");
      return ident == "G" ? Formula::globally(window, std::move(first))
                          : Formula::eventually(window, std::move(first));
    }
    if (ident == "true") return Formula::verum();
    auto it = predicates_.find(ident);
    if (it == predicates_.end()) {
      throw ParseError("unknown predicate '" + ident + "'", start);
    }
    return Formula::predicate(ident, it->second);
  }

  static constexpr int INT_MAX_ = 2147483647;

  std::string_view text_;
  const PredicateTable& predicates_;
  size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text,
                      const PredicateTable& predicates) {
  return Parser(text, predicates).parse();
}

}  // namespace stlpi
