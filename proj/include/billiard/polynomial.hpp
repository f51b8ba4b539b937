#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "billiard/numeric.hpp"

namespace billiard {

/// Exponent vector of a monomial in t_1, t_2, ...; index 0 holds the
/// exponent of t_1. Trailing zero exponents are always trimmed, so equal
/// monomials compare equal regardless of how many variables were in play.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents);
  static Monomial variable(int index, std::uint32_t power = 1);

  std::uint32_t exponent(int index) const;
  std::uint32_t total_degree() const;
  /// Highest variable index (1-based) with nonzero exponent, 0 for the unit.
  int max_variable() const { return static_cast<int>(exponents_.size()); }
  bool is_unit() const { return exponents_.empty(); }
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires a.divides(b) to be checked by the caller.
  friend Monomial operator/(const Monomial& b, const Monomial& a);
  friend bool operator==(const Monomial&, const Monomial&) = default;

  const std::vector<std::uint32_t>& exponents() const { return exponents_; }
  std::string to_string() const;

 private:
  void trim();
  std::vector<std::uint32_t> exponents_;
};

/// Graded lexicographic order with t_1 > t_2 > ...; `operator()` sorts
/// greater monomials first so that the leading term is begin().
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial over Q in the indeterminates t_1, t_2, ....
class Polynomial {
 public:
  using TermMap = std::map<Monomial, mpq_class, GrlexDescending>;

  Polynomial() = default;
  Polynomial(long constant);  // NOLINT(google-explicit-constructor)
  Polynomial(const mpq_class& constant);  // NOLINT(google-explicit-constructor)
  static Polynomial variable(int index);
  static Polynomial term(const mpq_class& coefficient, const Monomial& monomial);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of the constant term (0 if absent).
  mpq_class constant_term() const;
  mpq_class coefficient(const Monomial& m) const;
  const TermMap& terms() const { return terms_; }
  const Monomial& leading_monomial() const;
  const mpq_class& leading_coefficient() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(int var) const;
  /// Highest variable index present, 0 for constants.
  int max_variable() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const mpq_class& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const mpq_class& b) { return a *= b; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Scales so that the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  /// Coefficients of the polynomial viewed in Q[other vars][t_var],
  /// indexed by degree in t_var.
  std::vector<Polynomial> coefficients_in(int var) const;

  /// Substitutes numeric values for t_1..t_k (values[i] is t_{i+1}).
  Real evaluate(std::span<const Real> values, mpfr_prec_t precision) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpq_class& c);
  TermMap terms_;
};

/// Exact quotient a / b; throws std::domain_error if b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor over Q, normalized monic (gcd(0, 0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace billiard
