#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tauber/extreal.hpp"

namespace tauber {

enum class Op {
  constant,
  var_x,
  var_n,  // family index inside `family` pieces
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  sin,
  cos,
  exp,
  log,
  loglog,
  abs,
  indicator,  // 1 on [lo, hi), 0 elsewhere
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::constant;
  double value = 0.0;  // constant
  double lo = 0.0;     // indicator bounds
  double hi = 0.0;
  std::vector<NodePtr> args;
};

// Immutable expression tree over x (and the family index n).
class Expression {
 public:
  Expression() : root_(make_constant(0.0)) {}
  explicit Expression(NodePtr root) : root_(std::move(root)) {}

  static NodePtr make_constant(double v);
  static NodePtr make_var_x();
  static NodePtr make_var_n();
  static NodePtr make_unary(Op op, NodePtr arg);
  static NodePtr make_binary(Op op, NodePtr lhs, NodePtr rhs);
  static NodePtr make_indicator(double lo, double hi);

  // Throws DomainError for log/loglog outside their domain, division by
  // zero, or a non-finite result.
  double evaluate(double x, double n = 0.0) const;

  // Same expression evaluated with x = e^log_x in extended range.
  ExtReal evaluate_ext(double log_x, double n = 0.0) const;

  bool depends_on_x() const;
  bool depends_on_n() const;

  // Fully parenthesized text that parses back to the same tree.
  std::string to_string() const;

  const NodePtr& root() const noexcept { return root_; }

 private:
  NodePtr root_;
};

// Shortest round-trip text for a double ("inf" for +infinity).
std::string format_number(double v);

}  // namespace tauber
