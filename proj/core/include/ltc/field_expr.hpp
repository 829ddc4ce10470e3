#ifndef LTC_FIELD_EXPR_HPP
#define LTC_FIELD_EXPR_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ltc/vector_field.hpp"

namespace ltc {

/*
 * Scalar expressions over x1..xn:
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := factor (('*' | '/') factor)*
 *   factor := ('+' | '-') factor | base ('^' unsigned-integer)?
 *   base   := number | variable | '(' expr ')' | func '(' expr ')'
 *   func   := sin | cos | exp | tanh | abs
 *
 * Numbers are decimal literals with an optional exponent. Whitespace is
 * ignored between tokens. A unary sign binds looser than '^', so -x1^2 is
 * -(x1^2).
 */
class Expression {
 public:
  struct Node;

  /// Throws ParseError carrying the 1-based column of the offending token.
  static Expression parse(std::string_view text);

  /// vars[0] is x1. Throws NumericError on division by zero and
  /// std::out_of_range when a variable has no value.
  double evaluate(std::span<const double> vars) const;

  /// Canonical text; parse(to_string()) yields an identical tree.
  std::string to_string() const;

  /// Largest variable index referenced (1-based), 0 for constants.
  std::size_t max_variable() const noexcept { return max_variable_; }

 private:
  explicit Expression(std::shared_ptr<const Node> root, std::size_t max_variable)
      : root_(std::move(root)), max_variable_(max_variable) {}

  std::shared_ptr<const Node> root_;
  std::size_t max_variable_ = 0;
};

/// Splits a ';'-separated list of coordinate expressions.
std::vector<std::string> split_field_list(std::string_view text);

/// One expression per coordinate; dim = exprs.size(). Throws ParseError on
/// syntax errors, unknown functions, or variables beyond x<dim>, and when
/// the domain dimension differs from dim.
VectorField parse_field(const std::vector<std::string>& exprs, Box domain);

}  // namespace ltc

#endif  // LTC_FIELD_EXPR_HPP
