// Copyright 2026 the bbdecomp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bbdecomp/physconst.hpp"

namespace bbdecomp {

namespace detail {
struct EventNode;
}

using Rational = boost::multiprecision::cpp_rational;

/// Boolean expression over the atomic occupancy events A_s ("binary level s
/// holds one multiplet"). Distinct levels are independent, so probabilities
/// factor across levels. An expression may carry a closure: every level above
/// s_cap is unoccupied. Levels at or below s_cap that the expression does not
/// mention stay unconstrained.
class EventExpr {
 public:
  static EventExpr occupied(unsigned level);
  static EventExpr unoccupied(unsigned level);
  static EventExpr negation(EventExpr expr);
  static EventExpr conjunction(std::vector<EventExpr> terms);
  static EventExpr disjunction(std::vector<EventExpr> terms);

  /// Returns a copy with the closure set. s_cap < 0 means "highest level the
  /// expression constrains". An explicit s_cap below a constrained level is
  /// rejected.
  EventExpr with_closure(int s_cap = -1) const;

  bool closure() const { return closure_; }
  int s_cap() const { return s_cap_; }

  /// Distinct levels appearing in the tree, ascending.
  std::vector<unsigned> constrained_levels() const;

  /// Truth value on an occupancy pattern (bit s = occupancy of level s).
  /// Ignores the closure; see matches().
  bool evaluate(std::uint64_t pattern) const;

  /// evaluate() plus, for closed expressions, the requirement that no level
  /// above s_cap is occupied.
  bool matches(std::uint64_t pattern) const;

  std::string to_string() const;

 private:
  using NodePtr = std::shared_ptr<const detail::EventNode>;
  explicit EventExpr(NodePtr root) : root_(std::move(root)) {}

  NodePtr root_;
  bool closure_ = false;
  int s_cap_ = -1;
};

/// P(A_s) = b^(2^s) / (1 + b^(2^s)) when occupied, its complement otherwise.
double atom_prob(unsigned level, const ModeContext& ctx, bool occupied);

/// The event B_n "exactly n photons": the conjunction fixing every level
/// 0..s_cap to the corresponding bit of n, closed above s_cap.
/// Requires n < 2^(s_cap + 1).
EventExpr bn_to_expr(std::uint64_t n, int s_cap = 16);

/// Exact probability under the product measure: minterm expansion over the
/// constrained levels (at most 24 of them) times, for closed expressions, the
/// tail factor prod_{s > s_cap} P(A_s empty) = 1 - b^(2^(s_cap+1)).
double eval_prob(const EventExpr& expr, const ModeContext& ctx);

/// Same evaluation carried out in exact rational arithmetic at b = 1/2.
Rational eval_prob_rational_half(const EventExpr& expr);

/// The photon numbers whose dyadic pattern satisfies a closed expression;
/// the probability of the set equals eval_prob. Requires the closure and
/// s_cap <= 24.
std::vector<std::uint64_t> expr_to_bn_set(const EventExpr& expr);

/// Parses the CLI event syntax, e.g. `(A0|A3)&!A1&!A2&...rest-empty`.
///
/// Grammar: or-expression over `|`, and-expression over `&`, prefix `!`,
/// parentheses, atoms `A<level>`. The token `...rest-empty` may appear only
/// as a top-level conjunct; it closes the expression above its highest
/// constrained level.
EventExpr parse_event(std::string_view text);

}  // namespace bbdecomp
