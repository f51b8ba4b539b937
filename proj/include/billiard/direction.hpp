#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "billiard/numeric.hpp"
#include "billiard/rational_function.hpp"

namespace billiard {

/// Syntax tree of one direction component.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := INT | INT '/' INT | 'sqrt' '(' expr ')' | 't' INT | '(' expr ')' | '-' factor
struct DirectionExpr {
  enum class Kind { Integer, Rational, Add, Sub, Mul, Div, Neg, Sqrt, Var };

  Kind kind = Kind::Integer;
  mpq_class value;  // Integer and Rational literals
  int var = 0;      // Var: index k of t_k
  std::vector<DirectionExpr> args;

  static DirectionExpr integer(const mpz_class& v);
  static DirectionExpr rational(const mpz_class& num, const mpz_class& den);
  static DirectionExpr variable(int k);
  static DirectionExpr unary(Kind kind, DirectionExpr arg);
  static DirectionExpr binary(Kind kind, DirectionExpr lhs, DirectionExpr rhs);

  bool has_variable() const;
  bool has_sqrt() const;

  friend bool operator==(const DirectionExpr& a, const DirectionExpr& b);
};

/// Prints in the input grammar; parse_expression(to_string(e)) == e.
std::string to_string(const DirectionExpr& e);

enum class DirectionErrorKind {
  Syntax,
  FirstComponentNotOne,
  MixedSymbolicNumeric,
  NonPositiveComponent,
  UnsupportedSymbolic,
  Dimension,
  Evaluation,
};

class DirectionError : public std::runtime_error {
 public:
  DirectionError(DirectionErrorKind kind, const std::string& what, std::size_t position = 0)
      : std::runtime_error(what), kind_(kind), position_(position) {}
  DirectionErrorKind kind() const { return kind_; }
  /// Byte offset into the input text (syntax errors).
  std::size_t position() const { return position_; }

 private:
  DirectionErrorKind kind_;
  std::size_t position_;
};

DirectionExpr parse_expression(std::string_view text);
/// Splits on ',' and parses every component.
std::vector<DirectionExpr> parse_components(std::string_view text);

Real evaluate_numeric(const DirectionExpr& e, mpfr_prec_t precision);
RationalFunction evaluate_symbolic(const DirectionExpr& e);
/// Exact value of a sqrt-free, variable-free expression.
std::optional<mpq_class> evaluate_rational(const DirectionExpr& e);

/// Billiard direction (1, theta_1, ..., theta_d).
///
/// A numeric direction carries theta at the working precision. A symbolic
/// direction is the generic point (t_1, ..., t_d) of Q(t_1, ..., t_d).
struct Direction {
  std::string text;
  int d = 0;
  bool symbolic = false;
  std::vector<Real> theta;  // theta_1..theta_d, numeric directions only
  /// Irrationality of (1, theta) cannot be checked from finite data; it is
  /// carried as an assumption and quoted in every report.
  bool irrationality_declared = true;
  /// Some component is an exact rational (or the whole direction is); the
  /// generic symbolic verdicts may not apply.
  bool has_rational_component = false;
  mpfr_prec_t precision = kDefaultPrecision;

  int alphabet_size() const { return d + 1; }
  /// Ambient component i in 0..d, component 0 being 1.
  Real component(int i) const;
  /// (1, theta_1, ..., theta_d).
  std::vector<Real> ambient() const;
  /// Requires a numeric direction; throws std::logic_error otherwise.
  void require_numeric(const char* what) const;
};

/// Largest supported d (alphabet {1..9}).
inline constexpr int kMaxDimension = 8;

Direction parse_direction(std::string_view text, mpfr_prec_t precision = kDefaultPrecision);
Direction make_numeric_direction(std::vector<Real> theta, std::string text = {});
Direction make_symbolic_direction(int d);

/// t_1, ..., t_d.
std::vector<RationalFunction> symbolic_components(int d);

/// Canonical caveat text for reports.
std::string irrationality_caveat(const Direction& dir);

}  // namespace billiard
