#include "holozero/exprparse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace holozero {

enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Log, Sin, Cos, Tan, Sqrt };

struct Expr::Node {
  Op op;
  cplx value{};
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  return std::make_shared<const Expr::Node>(Expr::Node{op, {}, std::move(lhs), std::move(rhs)});
}

NodePtr number(cplx v) { return std::make_shared<const Expr::Node>(Expr::Node{Op::Number, v, nullptr, nullptr}); }

// Points exactly on the negative real axis are moved to the upper side of
// the cut.
cplx above_cut(cplx z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return {z.real(), 0.0};
  return z;
}

cplx power(cplx base, cplx exponent) {
  if (exponent.imag() == 0.0 && std::abs(exponent.real()) <= 1024.0 &&
      exponent.real() == std::trunc(exponent.real())) {
    auto n = static_cast<long>(exponent.real());
    const bool invert = n < 0;
    if (invert) n = -n;
    cplx result{1.0, 0.0};
    cplx b = base;
    while (n > 0) {
      if (n & 1) result *= b;
      b *= b;
      n >>= 1;
    }
    return invert ? 1.0 / result : result;
  }
  return std::exp(exponent * std::log(above_cut(base)));
}

cplx evaluate(const Expr::Node& n, cplx z) {
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::Var: return z;
    case Op::Neg: return -evaluate(*n.lhs, z);
    case Op::Add: return evaluate(*n.lhs, z) + evaluate(*n.rhs, z);
    case Op::Sub: return evaluate(*n.lhs, z) - evaluate(*n.rhs, z);
    case Op::Mul: return evaluate(*n.lhs, z) * evaluate(*n.rhs, z);
    case Op::Div: return evaluate(*n.lhs, z) / evaluate(*n.rhs, z);
    case Op::Pow: return power(evaluate(*n.lhs, z), evaluate(*n.rhs, z));
    case Op::Exp: return std::exp(evaluate(*n.lhs, z));
    case Op::Log: return std::log(above_cut(evaluate(*n.lhs, z)));
    case Op::Sin: return std::sin(evaluate(*n.lhs, z));
    case Op::Cos: return std::cos(evaluate(*n.lhs, z));
    case Op::Tan: return std::tan(evaluate(*n.lhs, z));
    case Op::Sqrt: return std::sqrt(above_cut(evaluate(*n.lhs, z)));
  }
  return {};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print(const Expr::Node& n) {
  auto binary = [&](const char* sym) { return "(" + print(*n.lhs) + " " + sym + " " + print(*n.rhs) + ")"; };
  auto call = [&](const char* name) { return std::string(name) + "(" + print(*n.lhs) + ")"; };
  switch (n.op) {
    case Op::Number:
      if (n.value.imag() == 0.0) return format_double(n.value.real());
      if (n.value.real() == 0.0) return format_double(n.value.imag()) + "i";
      return "(" + format_double(n.value.real()) + " + " + format_double(n.value.imag()) + "i)";
    case Op::Var: return "z";
    case Op::Neg: return "(-" + print(*n.lhs) + ")";
    case Op::Add: return binary("+");
    case Op::Sub: return binary("-");
    case Op::Mul: return binary("*");
    case Op::Div: return binary("/");
    case Op::Pow: return binary("^");
    case Op::Exp: return call("exp");
    case Op::Log: return call("log");
    case Op::Sin: return call("sin");
    case Op::Cos: return call("cos");
    case Op::Tan: return call("tan");
    case Op::Sqrt: return call("sqrt");
  }
  return {};
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse_all() {
    NodePtr root = sum();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      if (accept('+')) lhs = make(Op::Add, lhs, product());
      else if (accept('-')) lhs = make(Op::Sub, lhs, product());
      else return lhs;
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::Mul, lhs, unary());
      else if (accept('/')) lhs = make(Op::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    return power_expr();
  }

  NodePtr power_expr() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, base, unary());
    return base;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  NodePtr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("expected an operand");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      NodePtr inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr literal() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ == start + 1 && src_[start] == '.') {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < src_.size() && src_[pos_] == 'i' &&
        (pos_ + 1 == src_.size() || !ident_char(src_[pos_ + 1]))) {
      ++pos_;
      return number({0.0, v});
    }
    return number({v, 0.0});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "z") return make(Op::Var);
    if (name == "i") return number({0.0, 1.0});
    if (name == "pi") return number({std::numbers::pi, 0.0});
    if (name == "e") return number({std::numbers::e, 0.0});

    Op op;
    if (name == "exp") op = Op::Exp;
    else if (name == "log") op = Op::Log;
    else if (name == "sin") op = Op::Sin;
    else if (name == "cos") op = Op::Cos;
    else if (name == "tan") op = Op::Tan;
    else if (name == "sqrt") op = Op::Sqrt;
    else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    if (!accept('(')) fail("expected '(' after " + std::string(name));
    NodePtr arg = sum();
    if (!accept(')')) fail("expected ')'");
    return make(op, arg);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

cplx Expr::operator()(cplx z) const { return evaluate(*root_, z); }

std::string Expr::to_string() const { return print(*root_); }

Expr parse(std::string_view src) { return Expr(Parser(src).parse_all()); }

}  // namespace holozero
