#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "billiard/polynomial.hpp"

namespace billiard {

/// Element of Q(t_1, ..., t_d), the exact scalar used for every
/// equality and group-membership decision.
///
/// Canonical form: gcd(numerator, denominator) = 1 and the denominator is
/// monic under graded-lex order; zero is stored as 0/1. Two values are
/// equal iff their canonical forms coincide.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const mpq_class& value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws std::domain_error when `denominator` is zero.
  RationalFunction(Polynomial numerator, Polynomial denominator);

  static RationalFunction variable(int index) { return RationalFunction(Polynomial::variable(index)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// The rational value when constant.
  std::optional<mpq_class> constant_value() const;

  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  /// Throws std::domain_error on division by zero.
  RationalFunction& operator/=(const RationalFunction& rhs);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  Real evaluate(std::span<const Real> values, mpfr_prec_t precision) const;
  std::string to_string() const;

 private:
  void canonicalize();
  Polynomial num_;
  Polynomial den_;
};

using SymbolicScalar = RationalFunction;

/// Re-canonicalizes an arbitrary numerator/denominator pair.
RationalFunction canonical(const RationalFunction& x);

/// (c0, c1) with a == c0 + c1 * t_k, c0 and c1 integers, nothing else
/// present; std::nullopt otherwise.
std::optional<std::pair<long, long>> integer_affine_pattern(const RationalFunction& a, int k);

}  // namespace billiard
