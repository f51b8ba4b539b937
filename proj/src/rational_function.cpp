#include "billiard/rational_function.hpp"

#include <stdexcept>

namespace billiard {

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_divide(num_, g);
      den_ = exact_divide(den_, g);
    }
  }
  mpq_class lc = den_.leading_coefficient();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

std::optional<mpq_class> RationalFunction::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_term();
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
  }
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) { return *this += -rhs; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  canonicalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by the zero rational function");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  canonicalize();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

Real RationalFunction::evaluate(std::span<const Real> values, mpfr_prec_t precision) const {
  Real d = den_.evaluate(values, precision);
  if (d.is_zero()) throw std::domain_error("rational function has a pole at the evaluation point");
  return num_.evaluate(values, precision) / d;
}

std::string RationalFunction::to_string() const {
  if (den_ == Polynomial(1)) return num_.to_string();
  auto wrap = [](const Polynomial& p) {
    std::string s = p.to_string();
    return p.terms().size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

RationalFunction canonical(const RationalFunction& x) { return RationalFunction(x.numerator(), x.denominator()); }

std::optional<std::pair<long, long>> integer_affine_pattern(const RationalFunction& a, int k) {
  if (!a.is_polynomial()) return std::nullopt;
  // Canonical polynomials carry denominator exactly 1.
  const Polynomial& p = a.numerator();
  long c0 = 0;
  long c1 = 0;
  for (const auto& [m, c] : p.terms()) {
    if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return std::nullopt;
    long value = c.get_num().get_si();
    if (m.is_unit()) {
      c0 = value;
    } else if (m == Monomial::variable(k)) {
      c1 = value;
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(c0, c1);
}

}  // namespace billiard
