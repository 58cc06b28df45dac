#ifndef HOLOZERO_EXPRPARSE_HPP
#define HOLOZERO_EXPRPARSE_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace holozero {

using cplx = std::complex<double>;

/// Syntax error or unknown identifier, with the byte offset into the source.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Immutable expression tree in the single variable z.
///
/// Grammar (lowest to highest precedence):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?          right-associative
///   primary := number | number 'i' | 'z' | 'i' | 'pi' | 'e'
///            | func '(' sum ')' | '(' sum ')'
///   func    := exp | log | sin | cos | tan | sqrt
/// log and sqrt use principal branches with the cut on the negative real
/// axis; points on the cut take the value from the upper half plane.
class Expr {
 public:
  struct Node;

  cplx operator()(cplx z) const;

  /// Fully parenthesized canonical form; parses back to the same tree.
  std::string to_string() const;

 private:
  friend Expr parse(std::string_view src);
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

Expr parse(std::string_view src);

inline cplx eval_expr(const Expr& e, cplx z) { return e(z); }

}  // namespace holozero

#endif  // HOLOZERO_EXPRPARSE_HPP
