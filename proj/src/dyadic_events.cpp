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

#include "bbdecomp/dyadic_events.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bbdecomp {

namespace {
constexpr unsigned kMaxLevel = 63;              // patterns live in a u64
constexpr unsigned kMaxConstrainedLevels = 24;  // minterm expansion guard
constexpr int kMaxScap = 24;                    // bn-set enumeration guard
constexpr std::string_view kRestEmptyToken = "...rest-empty";
}  // namespace

struct detail::EventNode {
  enum class Kind { atom, negation, conjunction, disjunction };

  Kind kind;
  unsigned level = 0;     // atoms only
  bool occupied = false;  // atoms only
  std::vector<std::shared_ptr<const EventNode>> children;
};

namespace {

using Node = detail::EventNode;

void collect_levels(const Node& node, std::set<unsigned>& out) {
  if (node.kind == Node::Kind::atom) {
    out.insert(node.level);
    return;
  }
  for (const auto& child : node.children) collect_levels(*child, out);
}

bool eval_node(const Node& node, std::uint64_t pattern) {
  switch (node.kind) {
    case Node::Kind::atom:
      return (((pattern >> node.level) & 1u) != 0) == node.occupied;
    case Node::Kind::negation:
      return !eval_node(*node.children.front(), pattern);
    case Node::Kind::conjunction:
      return std::all_of(
          node.children.begin(), node.children.end(),
          [pattern](const auto& c) { return eval_node(*c, pattern); });
    case Node::Kind::disjunction:
      return std::any_of(
          node.children.begin(), node.children.end(),
          [pattern](const auto& c) { return eval_node(*c, pattern); });
  }
  throw std::invalid_argument("malformed event expression node");
}

void node_to_string(const Node& node, std::string& out) {
  switch (node.kind) {
    case Node::Kind::atom:
      if (!node.occupied) out += '!';
      out += 'A';
      out += std::to_string(node.level);
      return;
    case Node::Kind::negation:
      out += "!(";
      node_to_string(*node.children.front(), out);
      out += ')';
      return;
    case Node::Kind::conjunction:
    case Node::Kind::disjunction: {
      const char* glue = node.kind == Node::Kind::conjunction ? " & " : " | ";
      out += '(';
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i != 0) out += glue;
        node_to_string(*node.children[i], out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

EventExpr EventExpr::occupied(unsigned level) {
  if (level > kMaxLevel) {
    throw std::invalid_argument("event level out of range (max 63)");
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::atom;
  node->level = level;
  node->occupied = true;
  return EventExpr(std::move(node));
}

EventExpr EventExpr::unoccupied(unsigned level) {
  if (level > kMaxLevel) {
    throw std::invalid_argument("event level out of range (max 63)");
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::atom;
  node->level = level;
  node->occupied = false;
  return EventExpr(std::move(node));
}

EventExpr EventExpr::negation(EventExpr expr) {
  if (expr.closure_) {
    throw std::invalid_argument("cannot negate a closed expression");
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::negation;
  node->children.push_back(std::move(expr.root_));
  return EventExpr(std::move(node));
}

namespace {
std::shared_ptr<Node> make_connective(Node::Kind kind) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  return node;
}
}  // namespace

EventExpr EventExpr::conjunction(std::vector<EventExpr> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("conjunction needs at least one term");
  }
  if (terms.size() == 1) return std::move(terms.front());
  auto node = make_connective(Node::Kind::conjunction);
  for (EventExpr& term : terms) {
    if (term.closure_) {
      throw std::invalid_argument(
          "closed expressions cannot be combined; apply the closure last");
    }
    node->children.push_back(std::move(term.root_));
  }
  return EventExpr(std::move(node));
}

EventExpr EventExpr::disjunction(std::vector<EventExpr> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("disjunction needs at least one term");
  }
  if (terms.size() == 1) return std::move(terms.front());
  auto node = make_connective(Node::Kind::disjunction);
  for (EventExpr& term : terms) {
    if (term.closure_) {
      throw std::invalid_argument(
          "closed expressions cannot be combined; apply the closure last");
    }
    node->children.push_back(std::move(term.root_));
  }
  return EventExpr(std::move(node));
}

EventExpr EventExpr::with_closure(int s_cap) const {
  const std::vector<unsigned> levels = constrained_levels();
  const int highest = levels.empty() ? 0 : static_cast<int>(levels.back());
  EventExpr closed(*this);
  closed.closure_ = true;
  closed.s_cap_ = s_cap < 0 ? highest : s_cap;
  if (closed.s_cap_ < highest) {
    throw std::invalid_argument("closure cap lies below a constrained level");
  }
  if (closed.s_cap_ > static_cast<int>(kMaxLevel)) {
    throw std::invalid_argument("closure cap out of range (max 63)");
  }
  return closed;
}

std::vector<unsigned> EventExpr::constrained_levels() const {
  std::set<unsigned> levels;
  collect_levels(*root_, levels);
  return {levels.begin(), levels.end()};
}

bool EventExpr::evaluate(std::uint64_t pattern) const {
  return eval_node(*root_, pattern);
}

bool EventExpr::matches(std::uint64_t pattern) const {
  if (closure_ && s_cap_ < 63 && (pattern >> (s_cap_ + 1)) != 0) return false;
  return evaluate(pattern);
}

std::string EventExpr::to_string() const {
  std::string out;
  node_to_string(*root_, out);
  if (closure_) {
    out += " & ";
    out += kRestEmptyToken;
  }
  return out;
}

double atom_prob(unsigned level, const ModeContext& ctx, bool occupied) {
  if (level > kMaxLevel) {
    throw std::invalid_argument("event level out of range (max 63)");
  }
  const double bn =
      std::exp(-ctx.beta * std::ldexp(1.0, static_cast<int>(level)));
  return occupied ? bn / (1.0 + bn) : 1.0 / (1.0 + bn);
}

EventExpr bn_to_expr(std::uint64_t n, int s_cap) {
  if (s_cap < 0 || s_cap > kMaxScap) {
    throw std::invalid_argument("s_cap must lie in [0, 24]");
  }
  if ((n >> (s_cap + 1)) != 0) {
    throw std::invalid_argument("photon number too large for the closure cap");
  }
  std::vector<EventExpr> atoms;
  atoms.reserve(static_cast<std::size_t>(s_cap) + 1);
  for (int s = 0; s <= s_cap; ++s) {
    const bool set = (n >> s) & 1u;
    atoms.push_back(set ? EventExpr::occupied(static_cast<unsigned>(s))
                        : EventExpr::unoccupied(static_cast<unsigned>(s)));
  }
  return EventExpr::conjunction(std::move(atoms)).with_closure(s_cap);
}

namespace {

// The closure factor is the probability that every level above s_cap is
// unoccupied: prod_{s > cap} 1/(1 + b^(2^s)) telescopes to 1 - b^(2^(cap+1)).
template <typename Prob, typename Atom, typename Tail>
Prob eval_prob_generic(const EventExpr& expr, Atom&& atom, Tail&& tail) {
  const std::vector<unsigned> levels = expr.constrained_levels();
  if (levels.size() > kMaxConstrainedLevels) {
    throw std::runtime_error(
        "expression constrains more than 24 distinct levels");
  }
  Prob total(0);
  const std::uint64_t assignments = std::uint64_t{1} << levels.size();
  for (std::uint64_t mask = 0; mask < assignments; ++mask) {
    std::uint64_t pattern = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if ((mask >> i) & 1u) pattern |= std::uint64_t{1} << levels[i];
    }
    if (!expr.evaluate(pattern)) continue;
    Prob term(1);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      term *= atom(levels[i], ((mask >> i) & 1u) != 0);
    }
    total += term;
  }
  if (expr.closure()) total *= tail(expr.s_cap());
  return total;
}

}  // namespace

double eval_prob(const EventExpr& expr, const ModeContext& ctx) {
  // Atoms and the minterm sum are carried in extended precision; only the
  // final probability is rounded back to double.
  const long double beta = ctx.beta;
  return static_cast<double>(eval_prob_generic<long double>(
      expr,
      [beta](unsigned level, bool occupied) -> long double {
        const long double bn =
            std::exp(-beta * std::ldexp(1.0L, static_cast<int>(level)));
        return occupied ? bn / (1.0L + bn) : 1.0L / (1.0L + bn);
      },
      [beta](int s_cap) -> long double {
        return -std::expm1(-beta * std::ldexp(1.0L, s_cap + 1));
      }));
}

Rational eval_prob_rational_half(const EventExpr& expr) {
  using boost::multiprecision::cpp_int;
  // At b = 1/2 the atom weights are 1/(2^(2^s) + 1) and its complement.
  return eval_prob_generic<Rational>(
      expr,
      [](unsigned level, bool occupied) {
        const cpp_int p = cpp_int(1) << (std::uint64_t{1} << level);
        return occupied ? Rational(1, p + 1) : Rational(p, p + 1);
      },
      [](int s_cap) {
        const cpp_int p = cpp_int(1) << (std::uint64_t{1} << (s_cap + 1));
        return Rational(p - 1, p);
      });
}

std::vector<std::uint64_t> expr_to_bn_set(const EventExpr& expr) {
  if (!expr.closure()) {
    throw std::invalid_argument(
        "photon-number sets are defined only for closed expressions");
  }
  if (expr.s_cap() > kMaxScap) {
    throw std::runtime_error("closure cap too large to enumerate (max 24)");
  }
  std::vector<std::uint64_t> set;
  const std::uint64_t limit = std::uint64_t{1} << (expr.s_cap() + 1);
  for (std::uint64_t n = 0; n < limit; ++n) {
    if (expr.evaluate(n)) set.push_back(n);
  }
  return set;
}

// --- parser ------------------------------------------------------------------

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  bool saw_rest_empty = false;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw std::invalid_argument("event syntax error at position " +
                                std::to_string(pos) + ": " + message);
  }

  EventExpr parse_or(int depth) {
    std::vector<EventExpr> terms;
    terms.push_back(parse_and(depth));
    bool multiple = false;
    while (eat('|')) {
      multiple = true;
      terms.push_back(parse_and(depth));
    }
    if (multiple && depth == 0 && saw_rest_empty) {
      fail("rest-empty must be a top-level conjunct");
    }
    return EventExpr::disjunction(std::move(terms));
  }

  EventExpr parse_and(int depth) {
    std::vector<EventExpr> terms;
    append_and_term(terms, depth);
    while (eat('&')) append_and_term(terms, depth);
    if (terms.empty()) fail("expression constrains nothing");
    return EventExpr::conjunction(std::move(terms));
  }

  void append_and_term(std::vector<EventExpr>& terms, int depth) {
    skip_ws();
    if (text.compare(pos, kRestEmptyToken.size(), kRestEmptyToken) == 0) {
      if (depth != 0) fail("rest-empty must be a top-level conjunct");
      if (saw_rest_empty) fail("duplicate rest-empty");
      pos += kRestEmptyToken.size();
      saw_rest_empty = true;
      return;
    }
    terms.push_back(parse_unary(depth));
  }

  EventExpr parse_unary(int depth) {
    skip_ws();
    if (eat('!')) return EventExpr::negation(parse_unary(depth + 1));
    if (eat('(')) {
      EventExpr inner = parse_or(depth + 1);
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    return parse_atom();
  }

  EventExpr parse_atom() {
    skip_ws();
    if (pos >= text.size() || text[pos] != 'A') {
      fail("expected atom 'A<level>'");
    }
    ++pos;
    std::size_t digits = 0;
    unsigned level = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      level = level * 10 + static_cast<unsigned>(text[pos] - '0');
      if (level > kMaxLevel) fail("level out of range (max 63)");
      ++pos;
      ++digits;
    }
    if (digits == 0) fail("atom is missing its level");
    return EventExpr::occupied(level);
  }
};

}  // namespace

EventExpr parse_event(std::string_view text) {
  Parser parser{text};
  EventExpr expr = parser.parse_or(0);
  parser.skip_ws();
  if (parser.pos != text.size()) parser.fail("trailing input");
  return parser.saw_rest_empty ? expr.with_closure() : expr;
}

}  // namespace bbdecomp
