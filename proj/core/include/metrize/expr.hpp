#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metrize/jet.hpp"

namespace metrize {

enum class UnFn : std::uint8_t { Neg, Sin, Cos, Tan, Cot, Exp, Log, Sqrt };
enum class BinOp : std::uint8_t { Add, Sub, Mul, Div, Pow };

/// Parsed profile-function expression over a declared variable list.
/// Immutable after parsing; evaluation is pure.
///
/// Grammar: standard infix with precedence ^ > unary - > * / > + -,
/// left-associative except ^ (right-associative), parentheses, function
/// calls f(expr) for f in {neg, sin, cos, tan, cot, exp, log, sqrt}.
/// Number literals are decimal with optional fraction and exponent;
/// `pi` is a reserved constant.
class Expr {
 public:
  struct Node {
    enum class Kind : std::uint8_t { Number, Variable, Unary, Binary };
    Kind kind = Kind::Number;
    double number = 0.0;
    int var = -1;
    UnFn fn = UnFn::Neg;
    BinOp op = BinOp::Add;
    int a = -1;
    int b = -1;
  };

  /// Parses `src` against the ordered variable list `vars`.
  /// Throws SyntaxError (with byte offset) or UnknownIdentifier.
  static Expr parse(std::string_view src, std::span<const std::string> vars);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t node_count() const { return nodes_.size(); }

  /// Plain value at a point (same arithmetic as the jet path's value lane).
  double eval(std::span<const double> values) const;

  /// Value, gradient and Hessian at a point, exact to roundoff.
  /// Throws DomainError naming the function and the offending argument.
  Jet2 eval_jet(std::span<const double> point) const;

  /// Evaluation on already-formed jets (composition through other maps).
  Jet2 eval_jet(std::span<const Jet2> args) const;

  /// Round-trips: parse(str(), vars) is structurally identical to *this.
  std::string str() const;

  bool same_structure(const Expr& other) const;

 private:
  template <class T>
  T eval_node(int idx, std::span<const T> args) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<std::string> vars_;

  friend class ExprParser;
};

}  // namespace metrize
