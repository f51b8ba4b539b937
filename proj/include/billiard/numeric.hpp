#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace billiard {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;
inline constexpr double kDefaultEpsilon = 1e-12;

/// Working settings for the numeric backend.
struct NumericConfig {
  mpfr_prec_t precision = kDefaultPrecision;
  double epsilon = kDefaultEpsilon;
};

/// Real number at a fixed binary precision (MPFR, round-to-nearest).
///
/// Binary operations produce a result at the larger of the two operand
/// precisions. Equality and ordering operators are exact comparisons of the
/// stored values; tolerance-aware comparisons go through compare_margin().
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrecision);
  Real(double value, mpfr_prec_t prec);
  Real(long value, mpfr_prec_t prec);
  Real(const mpq_class& value, mpfr_prec_t prec);
  Real(const std::string& decimal, mpfr_prec_t prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const;
  long double to_long_double() const;
  /// Decimal rendering with `digits` significant digits.
  std::string to_string(int digits = 20) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator*=(long rhs);

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  Real operator-() const;

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }

 private:
  void raise_precision(const Real& other);

  mpfr_t value_;
};

Real sqrt(const Real& x);
Real abs(const Real& x);
Real floor(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

/// 2^(-bits) at the given working precision.
Real unit_roundoff(mpfr_prec_t precision, int slack_bits = 0);

enum class MarginOrder { Less, Marginal, Greater };

/// Orders `a` against `b`, reporting Marginal when |a - b| <= eps.
MarginOrder compare_margin(const Real& a, const Real& b, double eps);

const char* to_string(MarginOrder order);

}  // namespace billiard
