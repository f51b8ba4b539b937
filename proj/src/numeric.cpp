#include "billiard/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace billiard {

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(long value, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const mpq_class& value, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const std::string& decimal, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  if (mpfr_set_str(value_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(value_);
    throw std::invalid_argument("not a decimal number: " + decimal);
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

double Real::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

long double Real::to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  int n = mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  if (n < 0) throw std::runtime_error("mpfr_snprintf failed");
  if (static_cast<size_t>(n) >= buf.size()) {
    buf.resize(static_cast<size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  }
  return std::string(buf.data());
}

void Real::raise_precision(const Real& other) {
  if (other.precision() > precision()) mpfr_prec_round(value_, other.precision(), MPFR_RNDN);
}

Real& Real::operator+=(const Real& rhs) {
  raise_precision(rhs);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  raise_precision(rhs);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  raise_precision(rhs);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  raise_precision(rhs);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  Real out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real abs(const Real& x) {
  Real out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real floor(const Real& x) {
  Real out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real unit_roundoff(mpfr_prec_t precision, int slack_bits) {
  Real out(1L, precision);
  mpfr_mul_2si(out.get(), out.get(), -static_cast<long>(precision) + slack_bits, MPFR_RNDN);
  return out;
}

MarginOrder compare_margin(const Real& a, const Real& b, double eps) {
  Real diff = a - b;
  if (mpfr_cmpabs(diff.get(), Real(eps, diff.precision()).get()) <= 0) return MarginOrder::Marginal;
  return diff.sign() < 0 ? MarginOrder::Less : MarginOrder::Greater;
}

const char* to_string(MarginOrder order) {
  switch (order) {
    case MarginOrder::Less:
      return "less";
    case MarginOrder::Marginal:
      return "marginal";
    case MarginOrder::Greater:
      return "greater";
  }
  return "?";
}

}  // namespace billiard
