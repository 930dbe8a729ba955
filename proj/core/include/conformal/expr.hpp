#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conformal::expr {

enum class Op : unsigned char {
  number,
  variable,
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  sin,
  cos,
  tan,
  exp,
  log,
  sqrt,
  abs,
  // derivative of abs; rejects 0 at evaluation time
  sign,
  atan2,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable syntax tree node. `var` indexes the owning expression's variable list.
struct Node {
  Op op = Op::number;
  double value = 0.0;
  std::size_t var = 0;
  NodePtr lhs;
  NodePtr rhs;
};

/**
 * A parsed scalar expression over a fixed list of variable names.
 *
 * Grammar (lowest to highest precedence): `+ -`, `* /`, unary `-`, `^` (right
 * associative), then literals, variables, the constant `pi`, parenthesised
 * sub-expressions and calls to sin, cos, tan, exp, log, sqrt, abs, sign and
 * atan2(y, x).
 *
 * Expressions are immutable; evaluation and differentiation are const and
 * may run concurrently.
 */
class Expression {
 public:
  /// Throws SyntaxError (with byte offset) or UnknownIdentifier.
  static Expression parse(std::string_view source, std::vector<std::string> variables);

  static Expression constant(double value, std::vector<std::string> variables = {});

  /// Values in the order of `variables()`. Throws Error{domain} when any
  /// intermediate result is not a finite real.
  double eval(std::span<const double> values) const;
  double eval(std::initializer_list<double> values) const {
    return eval(std::span<const double>(values.begin(), values.size()));
  }
  /// Throws Error{missing_binding} if a declared variable has no value.
  double eval(const std::map<std::string, double>& binding) const;

  /// Symbolic partial derivative. Integer constant exponents use the power
  /// rule; any other power is differentiated as exp(b*log(a)).
  Expression differentiate(std::string_view variable) const;

  /// Fully parenthesised text that parses back to an equivalent expression.
  std::string print() const;

  const std::vector<std::string>& variables() const { return *variables_; }
  const NodePtr& root() const { return root_; }
  bool is_constant() const;
  std::size_t node_count() const;

 private:
  struct Instruction {
    Op op;
    double value;
    std::size_t var;
  };

  Expression(NodePtr root, std::shared_ptr<const std::vector<std::string>> variables);
  void compile();

  NodePtr root_;
  std::shared_ptr<const std::vector<std::string>> variables_;
  std::vector<Instruction> program_;
  std::size_t stack_depth_ = 0;
};

std::string_view op_name(Op op);

}  // namespace conformal::expr
