#include "tauber/expr.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "tauber/error.hpp"

namespace tauber {

NodePtr Expression::make_constant(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = v;
  return n;
}

NodePtr Expression::make_var_x() {
  auto n = std::make_shared<Node>();
  n->op = Op::var_x;
  return n;
}

NodePtr Expression::make_var_n() {
  auto n = std::make_shared<Node>();
  n->op = Op::var_n;
  return n;
}

NodePtr Expression::make_unary(Op op, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args.push_back(std::move(arg));
  return n;
}

NodePtr Expression::make_binary(Op op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args.push_back(std::move(lhs));
  n->args.push_back(std::move(rhs));
  return n;
}

NodePtr Expression::make_indicator(double lo, double hi) {
  auto n = std::make_shared<Node>();
  n->op = Op::indicator;
  n->lo = lo;
  n->hi = hi;
  return n;
}

namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double eval_node(const Node& node, double x, double n) {
  switch (node.op) {
    case Op::constant:
      return node.value;
    case Op::var_x:
      return x;
    case Op::var_n:
      return n;
    case Op::indicator:
      return (node.lo <= x && x < node.hi) ? 1.0 : 0.0;
    default:
      break;
  }
  const double a = eval_node(*node.args[0], x, n);
  switch (node.op) {
    case Op::neg:
      return -a;
    case Op::sin:
      return std::sin(a);
    case Op::cos:
      return std::cos(a);
    case Op::exp: {
      const double r = std::exp(a);
      if (!std::isfinite(r)) throw DomainError("exp overflow at argument " + describe(a));
      return r;
    }
    case Op::log:
      if (!(a > 0.0)) throw DomainError("log argument " + describe(a) + " is not positive");
      return std::log(a);
    case Op::loglog:
      if (!(a > 1.0)) throw DomainError("loglog argument " + describe(a) + " is not above 1");
      return std::log(std::log(a));
    case Op::abs:
      return std::fabs(a);
    default:
      break;
  }
  const double b = eval_node(*node.args[1], x, n);
  double r = 0.0;
  switch (node.op) {
    case Op::add:
      r = a + b;
      break;
    case Op::sub:
      r = a - b;
      break;
    case Op::mul:
      r = a * b;
      break;
    case Op::div:
      if (b == 0.0) throw DomainError("division by zero");
      r = a / b;
      break;
    case Op::pow:
      if (a < 0.0 && b != std::floor(b))
        throw DomainError("fractional power of negative base " + describe(a));
      if (a == 0.0 && b < 0.0) throw DomainError("negative power of zero");
      r = std::pow(a, b);
      break;
    default:
      throw Error("unhandled expression node");
  }
  if (!std::isfinite(r)) throw DomainError("non-finite intermediate result");
  return r;
}

ExtReal eval_node_ext(const Node& node, const ExtReal& x, double n) {
  switch (node.op) {
    case Op::constant:
      return ExtReal(node.value);
    case Op::var_x:
      return x;
    case Op::var_n:
      return ExtReal(n);
    case Op::indicator:
      return (ExtReal(node.lo) <= x && x < ExtReal(node.hi)) ? ExtReal(1.0) : ExtReal(0.0);
    default:
      break;
  }
  const ExtReal a = eval_node_ext(*node.args[0], x, n);
  switch (node.op) {
    case Op::neg:
      return -a;
    case Op::sin:
      return ExtReal(std::sin(a.finite_value()));
    case Op::cos:
      return ExtReal(std::cos(a.finite_value()));
    case Op::exp:
      return ext_exp(a);
    case Op::log:
      return ext_log(a);
    case Op::loglog: {
      if (!(ExtReal(1.0) < a)) throw DomainError("loglog argument is not above 1");
      return ext_log(ext_log(a));
    }
    case Op::abs:
      return a.sign() < 0 ? -a : a;
    default:
      break;
  }
  const ExtReal b = eval_node_ext(*node.args[1], x, n);
  switch (node.op) {
    case Op::add:
      return a + b;
    case Op::sub:
      return a - b;
    case Op::mul:
      return a * b;
    case Op::div:
      return a / b;
    case Op::pow:
      return ext_pow(a, b);
    default:
      throw Error("unhandled expression node");
  }
}

bool depends_on(const Node& node, Op var) {
  if (node.op == var) return true;
  if (node.op == Op::indicator) return var == Op::var_x;
  for (const auto& a : node.args)
    if (depends_on(*a, var)) return true;
  return false;
}

const char* function_name(Op op) {
  switch (op) {
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::loglog: return "loglog";
    case Op::abs: return "abs";
    default: return nullptr;
  }
}

void print_node(const Node& node, std::string& out) {
  switch (node.op) {
    case Op::constant:
      if (node.value < 0 || std::signbit(node.value)) {
        out += "(-";
        out += format_number(-node.value);
        out += ")";
      } else {
        out += format_number(node.value);
      }
      return;
    case Op::var_x:
      out += "x";
      return;
    case Op::var_n:
      out += "n";
      return;
    case Op::indicator:
      out += "indicator(";
      out += format_number(node.lo);
      out += ", ";
      out += format_number(node.hi);
      out += ")";
      return;
    case Op::neg:
      out += "(-";
      print_node(*node.args[0], out);
      out += ")";
      return;
    default:
      break;
  }
  if (const char* fn = function_name(node.op)) {
    out += fn;
    out += "(";
    print_node(*node.args[0], out);
    out += ")";
    return;
  }
  const char* sym = node.op == Op::add   ? " + "
                    : node.op == Op::sub ? " - "
                    : node.op == Op::mul ? " * "
                    : node.op == Op::div ? " / "
                                         : " ^ ";
  out += "(";
  print_node(*node.args[0], out);
  out += sym;
  print_node(*node.args[1], out);
  out += ")";
}

}  // namespace

double Expression::evaluate(double x, double n) const {
  const double r = eval_node(*root_, x, n);
  if (!std::isfinite(r)) throw DomainError("non-finite result");
  return r;
}

ExtReal Expression::evaluate_ext(double log_x, double n) const {
  return eval_node_ext(*root_, ExtReal::from_log(log_x), n);
}

bool Expression::depends_on_x() const { return depends_on(*root_, Op::var_x); }
bool Expression::depends_on_n() const { return depends_on(*root_, Op::var_n); }

std::string Expression::to_string() const {
  std::string out;
  print_node(*root_, out);
  return out;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace tauber
