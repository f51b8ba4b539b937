#include "billiard/direction.hpp"

#include <cctype>
#include <utility>

namespace billiard {

DirectionExpr DirectionExpr::integer(const mpz_class& v) {
  DirectionExpr e;
  e.kind = Kind::Integer;
  e.value = mpq_class(v);
  return e;
}

DirectionExpr DirectionExpr::rational(const mpz_class& num, const mpz_class& den) {
  DirectionExpr e;
  e.kind = Kind::Rational;
  e.value = mpq_class(num, den);
  e.value.canonicalize();
  return e;
}

DirectionExpr DirectionExpr::variable(int k) {
  DirectionExpr e;
  e.kind = Kind::Var;
  e.var = k;
  return e;
}

DirectionExpr DirectionExpr::unary(Kind kind, DirectionExpr arg) {
  DirectionExpr e;
  e.kind = kind;
  e.args.push_back(std::move(arg));
  return e;
}

DirectionExpr DirectionExpr::binary(Kind kind, DirectionExpr lhs, DirectionExpr rhs) {
  DirectionExpr e;
  e.kind = kind;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

bool DirectionExpr::has_variable() const {
  if (kind == Kind::Var) return true;
  for (const auto& a : args)
    if (a.has_variable()) return true;
  return false;
}

bool DirectionExpr::has_sqrt() const {
  if (kind == Kind::Sqrt) return true;
  for (const auto& a : args)
    if (a.has_sqrt()) return true;
  return false;
}

bool operator==(const DirectionExpr& a, const DirectionExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case DirectionExpr::Kind::Integer:
    case DirectionExpr::Kind::Rational:
      return a.value == b.value;
    case DirectionExpr::Kind::Var:
      return a.var == b.var;
    default:
      return a.args == b.args;
  }
}

namespace {

int precedence(const DirectionExpr& e) {
  switch (e.kind) {
    case DirectionExpr::Kind::Add:
    case DirectionExpr::Kind::Sub:
      return 1;
    case DirectionExpr::Kind::Mul:
    case DirectionExpr::Kind::Div:
      return 2;
    default:
      return 3;
  }
}

std::string wrap(const DirectionExpr& e) { return "(" + to_string(e) + ")"; }

}  // namespace

std::string to_string(const DirectionExpr& e) {
  using Kind = DirectionExpr::Kind;
  switch (e.kind) {
    case Kind::Integer:
      return e.value.get_num().get_str();
    case Kind::Rational:
      return e.value.get_num().get_str() + "/" + e.value.get_den().get_str();
    case Kind::Var:
      return "t" + std::to_string(e.var);
    case Kind::Sqrt:
      return "sqrt(" + to_string(e.args[0]) + ")";
    case Kind::Neg: {
      const auto& a = e.args[0];
      bool atomic = a.kind == Kind::Integer || a.kind == Kind::Rational || a.kind == Kind::Var ||
                    a.kind == Kind::Sqrt || a.kind == Kind::Neg;
      return "-" + (atomic ? to_string(a) : wrap(a));
    }
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
      int p = precedence(e);
      const auto& lhs = e.args[0];
      const auto& rhs = e.args[1];
      std::string l = precedence(lhs) < p ? wrap(lhs) : to_string(lhs);
      // Left-associative: an equal-precedence right operand needs parentheses.
      // Literal divisors are wrapped so that "a/(2)" is not read as a rational literal.
      bool literal = rhs.kind == Kind::Integer || rhs.kind == Kind::Rational;
      bool wrap_rhs = precedence(rhs) <= p || (e.kind == Kind::Div && literal);
      std::string r = wrap_rhs ? wrap(rhs) : to_string(rhs);
      const char* op = e.kind == Kind::Add ? "+" : e.kind == Kind::Sub ? "-" : e.kind == Kind::Mul ? "*" : "/";
      return l + op + r;
    }
  }
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

  DirectionExpr parse_all() {
    DirectionExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t at = offset_ + pos_;
    throw DirectionError(DirectionErrorKind::Syntax, "syntax error at position " + std::to_string(at) + ": " + msg,
                         at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  mpz_class integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  DirectionExpr expr() {
    DirectionExpr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = DirectionExpr::binary(DirectionExpr::Kind::Add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = DirectionExpr::binary(DirectionExpr::Kind::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  DirectionExpr term() {
    DirectionExpr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = DirectionExpr::binary(DirectionExpr::Kind::Mul, std::move(lhs), factor());
      } else if (accept('/')) {
        lhs = DirectionExpr::binary(DirectionExpr::Kind::Div, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  DirectionExpr factor() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      // INT '/' INT is a rational literal.
      std::size_t save = pos_;
      if (accept('/')) {
        if (at_digit()) {
          mpz_class den = integer();
          if (den == 0) fail("zero denominator in rational literal");
          return DirectionExpr::rational(num, den);
        }
        pos_ = save;
      }
      return DirectionExpr::integer(num);
    }
    if (c == '-') {
      ++pos_;
      return DirectionExpr::unary(DirectionExpr::Kind::Neg, factor());
    }
    if (c == '(') {
      ++pos_;
      DirectionExpr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      DirectionExpr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return DirectionExpr::unary(DirectionExpr::Kind::Sqrt, std::move(inner));
    }
    if (c == 't') {
      ++pos_;
      if (!at_digit()) fail("expected an index after 't'");
      mpz_class k = integer();
      if (k < 1 || k > kMaxDimension) fail("indeterminate index out of range");
      return DirectionExpr::variable(static_cast<int>(k.get_si()));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

DirectionExpr parse_expression(std::string_view text) { return Parser(text, 0).parse_all(); }

std::vector<DirectionExpr> parse_components(std::string_view text) {
  std::vector<DirectionExpr> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(Parser(piece, start).parse_all());
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Real evaluate_numeric(const DirectionExpr& e, mpfr_prec_t precision) {
  using Kind = DirectionExpr::Kind;
  switch (e.kind) {
    case Kind::Integer:
    case Kind::Rational:
      return Real(e.value, precision);
    case Kind::Var:
      throw DirectionError(DirectionErrorKind::Evaluation, "indeterminate in a numeric expression");
    case Kind::Neg:
      return -evaluate_numeric(e.args[0], precision);
    case Kind::Sqrt: {
      Real x = evaluate_numeric(e.args[0], precision);
      if (x.sign() < 0) throw DirectionError(DirectionErrorKind::Evaluation, "sqrt of a negative value");
      return sqrt(x);
    }
    case Kind::Add:
      return evaluate_numeric(e.args[0], precision) + evaluate_numeric(e.args[1], precision);
    case Kind::Sub:
      return evaluate_numeric(e.args[0], precision) - evaluate_numeric(e.args[1], precision);
    case Kind::Mul:
      return evaluate_numeric(e.args[0], precision) * evaluate_numeric(e.args[1], precision);
    case Kind::Div: {
      Real den = evaluate_numeric(e.args[1], precision);
      if (den.is_zero()) throw DirectionError(DirectionErrorKind::Evaluation, "division by zero");
      return evaluate_numeric(e.args[0], precision) / den;
    }
  }
  throw DirectionError(DirectionErrorKind::Evaluation, "bad expression");
}

RationalFunction evaluate_symbolic(const DirectionExpr& e) {
  using Kind = DirectionExpr::Kind;
  switch (e.kind) {
    case Kind::Integer:
    case Kind::Rational:
      return RationalFunction(e.value);
    case Kind::Var:
      return RationalFunction::variable(e.var);
    case Kind::Neg:
      return -evaluate_symbolic(e.args[0]);
    case Kind::Sqrt:
      throw DirectionError(DirectionErrorKind::Evaluation, "sqrt is not available in symbolic arithmetic");
    case Kind::Add:
      return evaluate_symbolic(e.args[0]) + evaluate_symbolic(e.args[1]);
    case Kind::Sub:
      return evaluate_symbolic(e.args[0]) - evaluate_symbolic(e.args[1]);
    case Kind::Mul:
      return evaluate_symbolic(e.args[0]) * evaluate_symbolic(e.args[1]);
    case Kind::Div: {
      RationalFunction den = evaluate_symbolic(e.args[1]);
      if (den.is_zero()) throw DirectionError(DirectionErrorKind::Evaluation, "division by zero");
      return evaluate_symbolic(e.args[0]) / den;
    }
  }
  throw DirectionError(DirectionErrorKind::Evaluation, "bad expression");
}

std::optional<mpq_class> evaluate_rational(const DirectionExpr& e) {
  if (e.has_sqrt() || e.has_variable()) return std::nullopt;
  return evaluate_symbolic(e).constant_value();
}

Real Direction::component(int i) const {
  require_numeric("component");
  if (i == 0) return Real(1L, precision);
  return theta.at(static_cast<size_t>(i - 1));
}

std::vector<Real> Direction::ambient() const {
  require_numeric("ambient");
  std::vector<Real> out;
  out.reserve(theta.size() + 1);
  out.emplace_back(1L, precision);
  for (const auto& t : theta) out.push_back(t);
  return out;
}

void Direction::require_numeric(const char* what) const {
  if (symbolic) throw std::logic_error(std::string(what) + " requires a numeric direction");
}

Direction parse_direction(std::string_view text, mpfr_prec_t precision) {
  std::vector<DirectionExpr> parts = parse_components(text);
  int d = static_cast<int>(parts.size()) - 1;
  if (d < 1 || d > kMaxDimension)
    throw DirectionError(DirectionErrorKind::Dimension,
                         "direction needs between 2 and " + std::to_string(kMaxDimension + 1) + " components");

  bool any_var = false;
  bool any_sqrt = false;
  for (const auto& p : parts) {
    any_var = any_var || p.has_variable();
    any_sqrt = any_sqrt || p.has_sqrt();
  }
  if (any_var && any_sqrt)
    throw DirectionError(DirectionErrorKind::MixedSymbolicNumeric, "direction mixes indeterminates and sqrt");

  Direction dir;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) dir.text += c;
  dir.d = d;
  dir.precision = precision;

  // First component: exactly 1.
  if (parts[0].has_variable())
    throw DirectionError(DirectionErrorKind::FirstComponentNotOne, "first component must be exactly 1");
  if (auto q = evaluate_rational(parts[0])) {
    if (*q != 1) throw DirectionError(DirectionErrorKind::FirstComponentNotOne, "first component must be exactly 1");
  } else {
    Real first = evaluate_numeric(parts[0], precision);
    if (compare_margin(first, Real(1L, precision), unit_roundoff(precision, 8).to_double()) != MarginOrder::Marginal)
      throw DirectionError(DirectionErrorKind::FirstComponentNotOne, "first component must be exactly 1");
  }

  if (any_var) {
    dir.symbolic = true;
    for (int k = 1; k <= d; ++k) {
      RationalFunction v = evaluate_symbolic(parts[static_cast<size_t>(k)]);
      if (v != RationalFunction::variable(k))
        throw DirectionError(DirectionErrorKind::UnsupportedSymbolic,
                             "symbolic directions must be exactly 1,t1,...,td; component " + std::to_string(k + 1) +
                                 " is " + v.to_string());
    }
    return dir;
  }

  for (int k = 1; k <= d; ++k) {
    const auto& p = parts[static_cast<size_t>(k)];
    if (evaluate_rational(p)) dir.has_rational_component = true;
    Real v = evaluate_numeric(p, precision);
    if (v.sign() <= 0)
      throw DirectionError(DirectionErrorKind::NonPositiveComponent,
                           "component " + std::to_string(k + 1) + " is not positive");
    dir.theta.push_back(std::move(v));
  }
  return dir;
}

Direction make_numeric_direction(std::vector<Real> theta, std::string text) {
  if (theta.empty() || static_cast<int>(theta.size()) > kMaxDimension)
    throw DirectionError(DirectionErrorKind::Dimension, "unsupported dimension");
  Direction dir;
  dir.d = static_cast<int>(theta.size());
  dir.precision = theta.front().precision();
  for (const auto& t : theta)
    if (t.sign() <= 0) throw DirectionError(DirectionErrorKind::NonPositiveComponent, "non-positive component");
  dir.theta = std::move(theta);
  if (text.empty()) {
    text = "1";
    for (const auto& t : dir.theta) text += "," + t.to_string(40);
  }
  dir.text = std::move(text);
  return dir;
}

Direction make_symbolic_direction(int d) {
  if (d < 1 || d > kMaxDimension) throw DirectionError(DirectionErrorKind::Dimension, "unsupported dimension");
  Direction dir;
  dir.d = d;
  dir.symbolic = true;
  dir.text = "1";
  for (int k = 1; k <= d; ++k) dir.text += ",t" + std::to_string(k);
  return dir;
}

std::vector<RationalFunction> symbolic_components(int d) {
  std::vector<RationalFunction> out;
  for (int k = 1; k <= d; ++k) out.push_back(RationalFunction::variable(k));
  return out;
}

std::string irrationality_caveat(const Direction& dir) {
  std::string s =
      "irrationality of (1, theta) is assumed, not verified; exact verdicts are proven over Q(t1..td) and hold for "
      "generic directions";
  if (dir.has_rational_component) s += "; WARNING: a component is rational, so generic verdicts may not apply";
  return s;
}

}  // namespace billiard
