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
#ifndef STLPI_PARSER_HPP
#define STLPI_PARSER_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stlpi/formula.hpp"

namespace stlpi {

// Named predicates available to the parser.
using PredicateTable = std::map<std::string, Predicate>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, size_t position)
      : std::runtime_error(message + " at position " +
                           std::to_string(position)),
        position_(position) {}

  // Byte offset into the input where the error was detected.
  size_t position() const { return position_; }

 private:
  size_t position_;
};

/*
 * Parses the textual formula grammar:
 *
 *   formula  := disjunct
 *   disjunct := conjunct ("|" conjunct)*
 *   conjunct := unary ("&" unary)*
 *   unary    := "!" unary
 *             | "G" "[" INT "," INT "]" "(" formula ")"
 *             | "F" "[" INT "," INT "]" "(" formula ")"
 *             | "U" "[" INT "," INT "]" "(" formula "," formula ")"
 *             | "(" formula ")"
 *             | "true"
 *             | IDENT
 *
 * IDENT is [A-Za-z_][A-Za-z0-9_]* and must name an entry of the predicate
 * table; "G", "F" and "U" act as operators only when directly followed by
 * "[". Whitespace between tokens is ignored. Chains of "&" or "|" become a
 * single n-ary node. Malformed input, unknown predicate names and windows
 * with kmax < kmin raise ParseError.
 */
Formula parse_formula(std::string_view text, const PredicateTable& predicates);

}  // namespace stlpi

#endif  // STLPI_PARSER_HPP
