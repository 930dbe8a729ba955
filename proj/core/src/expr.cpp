#include "conformal/expr.hpp"

#include "conformal/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace conformal::expr {

namespace {

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::number;
  n->value = v;
  return n;
}

NodePtr make_variable(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->op = Op::variable;
  n->var = index;
  return n;
}

NodePtr make_node(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool is_number(const NodePtr& n, double v) { return n->op == Op::number && n->value == v; }
bool is_number(const NodePtr& n) { return n->op == Op::number; }

// Light constant folding.
NodePtr neg(NodePtr a) {
  if (is_number(a)) return make_number(-a->value);
  if (a->op == Op::neg) return a->lhs;
  return make_node(Op::neg, std::move(a));
}

NodePtr add(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  if (is_number(a) && is_number(b)) return make_number(a->value + b->value);
  return make_node(Op::add, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return neg(std::move(b));
  if (is_number(a) && is_number(b)) return make_number(a->value - b->value);
  return make_node(Op::sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return make_number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  if (is_number(a, -1.0)) return neg(std::move(b));
  if (is_number(b, -1.0)) return neg(std::move(a));
  if (is_number(a) && is_number(b)) return make_number(a->value * b->value);
  return make_node(Op::mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_number(b, 1.0)) return a;
  if (is_number(a, 0.0) && !is_number(b, 0.0)) return make_number(0.0);
  return make_node(Op::div, std::move(a), std::move(b));
}

NodePtr pow(NodePtr a, NodePtr b) {
  if (is_number(b, 1.0)) return a;
  if (is_number(b, 0.0)) return make_number(1.0);
  return make_node(Op::pow, std::move(a), std::move(b));
}

NodePtr fn(Op op, NodePtr a) { return make_node(op, std::move(a)); }

bool has_variables(const NodePtr& n) {
  if (!n) return false;
  if (n->op == Op::variable) return true;
  return has_variables(n->lhs) || has_variables(n->rhs);
}

[[noreturn]] void domain_error(Op op, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  throw Error(ErrorKind::domain,
              std::string("evaluation domain error in ") + std::string(op_name(op)) +
                  " (argument " + buf + ")");
}

double apply_unary(Op op, double x) {
  double r = 0.0;
  switch (op) {
    case Op::neg: r = -x; break;
    case Op::sin: r = std::sin(x); break;
    case Op::cos: r = std::cos(x); break;
    case Op::tan: r = std::tan(x); break;
    case Op::exp: r = std::exp(x); break;
    case Op::log:
      if (!(x > 0.0)) domain_error(op, x);
      r = std::log(x);
      break;
    case Op::sqrt:
      if (x < 0.0) domain_error(op, x);
      r = std::sqrt(x);
      break;
    case Op::abs: r = std::fabs(x); break;
    case Op::sign:
      if (x == 0.0) domain_error(op, x);
      r = x > 0.0 ? 1.0 : -1.0;
      break;
    default: r = std::nan("");
  }
  if (!std::isfinite(r)) domain_error(op, x);
  return r;
}

double apply_binary(Op op, double a, double b) {
  double r = 0.0;
  switch (op) {
    case Op::add: r = a + b; break;
    case Op::sub: r = a - b; break;
    case Op::mul: r = a * b; break;
    case Op::div:
      if (b == 0.0) domain_error(op, b);
      r = a / b;
      break;
    case Op::pow: r = std::pow(a, b); break;
    case Op::atan2:
      if (a == 0.0 && b == 0.0) domain_error(op, 0.0);
      r = std::atan2(a, b);
      break;
    default: r = std::nan("");
  }
  if (!std::isfinite(r)) domain_error(op, op == Op::pow ? a : b);
  return r;
}

std::optional<double> constant_value(const NodePtr& n) {
  if (has_variables(n)) return std::nullopt;
  switch (n->op) {
    case Op::number: return n->value;
    case Op::neg:
    case Op::sin:
    case Op::cos:
    case Op::tan:
    case Op::exp:
    case Op::log:
    case Op::sqrt:
    case Op::abs:
    case Op::sign: {
      auto x = constant_value(n->lhs);
      if (!x) return std::nullopt;
      try {
        return apply_unary(n->op, *x);
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    default: {
      auto a = constant_value(n->lhs);
      auto b = constant_value(n->rhs);
      if (!a || !b) return std::nullopt;
      try {
        return apply_binary(n->op, *a, *b);
      } catch (const Error&) {
        return std::nullopt;
      }
    }
  }
}

NodePtr derive(const NodePtr& n, std::size_t v) {
  switch (n->op) {
    case Op::number: return make_number(0.0);
    case Op::variable: return make_number(n->var == v ? 1.0 : 0.0);
    case Op::neg: return neg(derive(n->lhs, v));
    case Op::add: return add(derive(n->lhs, v), derive(n->rhs, v));
    case Op::sub: return sub(derive(n->lhs, v), derive(n->rhs, v));
    case Op::mul:
      return add(mul(derive(n->lhs, v), n->rhs), mul(n->lhs, derive(n->rhs, v)));
    case Op::div: {
      auto da = derive(n->lhs, v);
      auto db = derive(n->rhs, v);
      if (is_number(db, 0.0)) return div(da, n->rhs);
      return div(sub(mul(da, n->rhs), mul(n->lhs, db)), pow(n->rhs, make_number(2.0)));
    }
    case Op::pow: {
      auto c = constant_value(n->rhs);
      if (c && std::isfinite(*c) && *c == std::round(*c)) {
        auto da = derive(n->lhs, v);
        return mul(mul(make_number(*c), pow(n->lhs, make_number(*c - 1.0))), da);
      }
      // a^b == exp(b*log(a))
      auto rewritten = fn(Op::exp, mul(n->rhs, fn(Op::log, n->lhs)));
      return derive(rewritten, v);
    }
    case Op::sin: return mul(fn(Op::cos, n->lhs), derive(n->lhs, v));
    case Op::cos: return neg(mul(fn(Op::sin, n->lhs), derive(n->lhs, v)));
    case Op::tan:
      return div(derive(n->lhs, v), pow(fn(Op::cos, n->lhs), make_number(2.0)));
    case Op::exp: return mul(n, derive(n->lhs, v));
    case Op::log: return div(derive(n->lhs, v), n->lhs);
    case Op::sqrt: return div(derive(n->lhs, v), mul(make_number(2.0), n));
    case Op::abs: return mul(fn(Op::sign, n->lhs), derive(n->lhs, v));
    case Op::sign: return make_number(0.0);
    case Op::atan2: {
      // atan2(y, x)
      const auto& y = n->lhs;
      const auto& x = n->rhs;
      auto num = sub(mul(x, derive(y, v)), mul(y, derive(x, v)));
      auto den = add(pow(x, make_number(2.0)), pow(y, make_number(2.0)));
      return div(num, den);
    }
  }
  return make_number(0.0);
}

void print_node(const NodePtr& n, const std::vector<std::string>& vars, std::string& out) {
  switch (n->op) {
    case Op::number: {
      std::array<char, 64> buf{};
      std::snprintf(buf.data(), buf.size(), "%.17g", n->value);
      if (n->value < 0.0 || std::signbit(n->value)) {
        out += "(";
        out += buf.data();
        out += ")";
      } else {
        out += buf.data();
      }
      return;
    }
    case Op::variable: out += vars[n->var]; return;
    case Op::neg:
      out += "(-";
      print_node(n->lhs, vars, out);
      out += ")";
      return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::pow: {
      static constexpr std::array<char, 5> symbols{'+', '-', '*', '/', '^'};
      out += "(";
      print_node(n->lhs, vars, out);
      out += symbols[static_cast<int>(n->op) - static_cast<int>(Op::add)];
      print_node(n->rhs, vars, out);
      out += ")";
      return;
    }
    case Op::atan2:
      out += "atan2(";
      print_node(n->lhs, vars, out);
      out += ",";
      print_node(n->rhs, vars, out);
      out += ")";
      return;
    default:
      out += op_name(n->op);
      out += "(";
      print_node(n->lhs, vars, out);
      out += ")";
      return;
  }
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr parse() {
    auto root = expression();
    skip_ws();
    if (pos_ != src_.size()) throw SyntaxError(pos_, "operator or end of input");
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
  }

  NodePtr expression() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Op::add, lhs, term());
      } else if (accept('-')) {
        lhs = make_node(Op::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Op::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_node(Op::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(Op::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make_node(Op::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError(pos_, "expression");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      auto inner = expression();
      expect(')');
      return inner;
    }
    throw SyntaxError(pos_, "expression");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_) throw SyntaxError(start, "number");
    return make_number(value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(src_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      ++pos_;
      static const std::map<std::string, Op> unary_functions{
          {"sin", Op::sin},   {"cos", Op::cos},   {"tan", Op::tan}, {"exp", Op::exp},
          {"log", Op::log},   {"sqrt", Op::sqrt}, {"abs", Op::abs}, {"sign", Op::sign},
      };
      if (name == "atan2") {
        auto y = expression();
        expect(',');
        auto x = expression();
        expect(')');
        return make_node(Op::atan2, y, x);
      }
      auto it = unary_functions.find(name);
      if (it == unary_functions.end()) throw UnknownIdentifier(name);
      auto arg = expression();
      expect(')');
      return make_node(it->second, arg);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return make_variable(i);
    }
    if (name == "pi") return make_number(std::numbers::pi);
    throw UnknownIdentifier(name);
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

std::size_t count_nodes(const NodePtr& n) {
  if (!n) return 0;
  return 1 + count_nodes(n->lhs) + count_nodes(n->rhs);
}

}  // namespace

std::string_view op_name(Op op) {
  switch (op) {
    case Op::number: return "number";
    case Op::variable: return "variable";
    case Op::neg: return "neg";
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::mul: return "*";
    case Op::div: return "/";
    case Op::pow: return "^";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::tan: return "tan";
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::sqrt: return "sqrt";
    case Op::abs: return "abs";
    case Op::sign: return "sign";
    case Op::atan2: return "atan2";
  }
  return "?";
}

Expression::Expression(NodePtr root, std::shared_ptr<const std::vector<std::string>> variables)
    : root_(std::move(root)), variables_(std::move(variables)) {
  compile();
}

Expression Expression::parse(std::string_view source, std::vector<std::string> variables) {
  Parser parser(source, variables);
  auto root = parser.parse();
  return Expression(std::move(root),
                    std::make_shared<const std::vector<std::string>>(std::move(variables)));
}

Expression Expression::constant(double value, std::vector<std::string> variables) {
  return Expression(make_number(value),
                    std::make_shared<const std::vector<std::string>>(std::move(variables)));
}

void Expression::compile() {
  program_.clear();
  std::size_t depth = 0;
  stack_depth_ = 0;
  // post-order emission; track stack height for the evaluator
  auto emit = [&](auto&& self, const NodePtr& n) -> void {
    if (n->lhs) self(self, n->lhs);
    if (n->rhs) self(self, n->rhs);
    program_.push_back({n->op, n->value, n->var});
    if (n->op == Op::number || n->op == Op::variable) {
      ++depth;
    } else if (n->rhs) {
      --depth;
    }
    stack_depth_ = std::max(stack_depth_, depth);
  };
  emit(emit, root_);
}

double Expression::eval(std::span<const double> values) const {
  constexpr std::size_t kInline = 64;
  std::array<double, kInline> inline_stack{};
  std::vector<double> heap_stack;
  double* stack = inline_stack.data();
  if (stack_depth_ > kInline) {
    heap_stack.resize(stack_depth_);
    stack = heap_stack.data();
  }
  std::size_t top = 0;
  for (const auto& ins : program_) {
    switch (ins.op) {
      case Op::number: stack[top++] = ins.value; break;
      case Op::variable:
        if (ins.var >= values.size()) {
          throw Error(ErrorKind::missing_binding,
                      "no value bound for variable '" + (*variables_)[ins.var] + "'");
        }
        stack[top++] = values[ins.var];
        break;
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::div:
      case Op::pow:
      case Op::atan2: {
        const double b = stack[--top];
        const double a = stack[top - 1];
        stack[top - 1] = apply_binary(ins.op, a, b);
        break;
      }
      default: stack[top - 1] = apply_unary(ins.op, stack[top - 1]); break;
    }
  }
  return stack[0];
}

double Expression::eval(const std::map<std::string, double>& binding) const {
  std::vector<double> values;
  values.reserve(variables_->size());
  for (const auto& name : *variables_) {
    auto it = binding.find(name);
    if (it == binding.end()) {
      // unused variables may stay unbound
      bool used = false;
      for (const auto& ins : program_) {
        if (ins.op == Op::variable && (*variables_)[ins.var] == name) used = true;
      }
      if (used) throw Error(ErrorKind::missing_binding, "no value bound for variable '" + name + "'");
      values.push_back(0.0);
    } else {
      values.push_back(it->second);
    }
  }
  return eval(std::span<const double>(values));
}

Expression Expression::differentiate(std::string_view variable) const {
  for (std::size_t i = 0; i < variables_->size(); ++i) {
    if ((*variables_)[i] == variable) return Expression(derive(root_, i), variables_);
  }
  throw UnknownIdentifier(std::string(variable));
}

std::string Expression::print() const {
  std::string out;
  print_node(root_, *variables_, out);
  return out;
}

bool Expression::is_constant() const { return !has_variables(root_); }

std::size_t Expression::node_count() const { return count_nodes(root_); }

}  // namespace conformal::expr
