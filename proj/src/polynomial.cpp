#include "billiard/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace billiard {

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) { trim(); }

Monomial Monomial::variable(int index, std::uint32_t power) {
  if (index < 1) throw std::invalid_argument("variable index must be >= 1");
  std::vector<std::uint32_t> e(static_cast<size_t>(index), 0);
  e.back() = power;
  return Monomial(std::move(e));
}

void Monomial::trim() {
  while (!exponents_.empty() && exponents_.back() == 0) exponents_.pop_back();
}

std::uint32_t Monomial::exponent(int index) const {
  auto i = static_cast<size_t>(index - 1);
  return i < exponents_.size() ? exponents_[i] : 0;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (auto e : exponents_) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  if (exponents_.size() > other.exponents_.size()) return false;
  for (size_t i = 0; i < exponents_.size(); ++i)
    if (exponents_[i] > other.exponents_[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::vector<std::uint32_t> e(std::max(a.exponents_.size(), b.exponents_.size()), 0);
  for (size_t i = 0; i < a.exponents_.size(); ++i) e[i] += a.exponents_[i];
  for (size_t i = 0; i < b.exponents_.size(); ++i) e[i] += b.exponents_[i];
  return Monomial(std::move(e));
}

Monomial operator/(const Monomial& b, const Monomial& a) {
  std::vector<std::uint32_t> e = b.exponents_;
  for (size_t i = 0; i < a.exponents_.size(); ++i) e[i] -= a.exponents_[i];
  return Monomial(std::move(e));
}

std::string Monomial::to_string() const {
  std::string out;
  for (size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 't' + std::to_string(i + 1);
    if (exponents_[i] > 1) out += '^' + std::to_string(exponents_[i]);
  }
  return out;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  auto da = a.total_degree();
  auto db = b.total_degree();
  if (da != db) return da > db;
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  size_t n = std::max(ea.size(), eb.size());
  for (size_t i = 0; i < n; ++i) {
    std::uint32_t x = i < ea.size() ? ea[i] : 0;
    std::uint32_t y = i < eb.size() ? eb[i] : 0;
    if (x != y) return x > y;
  }
  return false;
}

Polynomial::Polynomial(long constant) : Polynomial(mpq_class(constant)) {}

Polynomial::Polynomial(const mpq_class& constant) {
  if (constant != 0) terms_.emplace(Monomial(), constant);
}

Polynomial Polynomial::variable(int index) { return term(1, Monomial::variable(index)); }

Polynomial Polynomial::term(const mpq_class& coefficient, const Monomial& monomial) {
  Polynomial p;
  if (coefficient != 0) p.terms_.emplace(monomial, coefficient);
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit()); }

mpq_class Polynomial::constant_term() const { return coefficient(Monomial()); }

mpq_class Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const mpq_class& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.total_degree(); }

std::uint32_t Polynomial::degree_in(int var) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

int Polynomial::max_variable() const {
  int v = 0;
  for (const auto& [m, c] : terms_) v = std::max(v, m.max_variable());
  return v;
}

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& rhs) {
  if (rhs == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= rhs;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  mpq_class inv = 1 / leading_coefficient();
  return *this * inv;
}

std::vector<Polynomial> Polynomial::coefficients_in(int var) const {
  std::vector<Polynomial> out(degree_in(var) + 1);
  for (const auto& [m, c] : terms_) {
    auto e = m.exponent(var);
    auto rest = m.exponents();
    if (static_cast<size_t>(var) <= rest.size()) rest[static_cast<size_t>(var - 1)] = 0;
    out[e].add_term(Monomial(std::move(rest)), c);
  }
  return out;
}

Real Polynomial::evaluate(std::span<const Real> values, mpfr_prec_t precision) const {
  Real sum(precision);
  Real term(precision);
  Real power(precision);
  for (const auto& [m, c] : terms_) {
    term = Real(c, precision);
    const auto& e = m.exponents();
    if (e.size() > values.size()) throw std::out_of_range("polynomial uses more indeterminates than supplied values");
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      power = Real(precision);
      mpfr_pow_ui(power.get(), values[i].get(), e[i], MPFR_RNDN);
      term *= power;
    }
    sum += term;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_unit()) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << m.to_string();
    }
  }
  return os.str();
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  Polynomial quotient;
  Polynomial rest = a;
  const Monomial& lb = b.leading_monomial();
  const mpq_class& cb = b.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& lr = rest.leading_monomial();
    if (!lb.divides(lr)) throw std::domain_error("polynomial division is not exact");
    Polynomial t = Polynomial::term(rest.leading_coefficient() / cb, lr / lb);
    quotient += t;
    rest -= t * b;
  }
  return quotient;
}

namespace {

Polynomial content_in(const Polynomial& p, int var) {
  Polynomial g;
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, int var) { return exact_divide(p, content_in(p, var)); }

// Remainder of lc(b)^k * a modulo b in t_var, for some k >= 0.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int var) {
  auto db = b.degree_in(var);
  Polynomial lcb = b.coefficients_in(var).back();
  while (!a.is_zero()) {
    auto da = a.degree_in(var);
    if (da < db) break;
    Polynomial lca = a.coefficients_in(var).back();
    a = lcb * a - lca * Polynomial::term(1, Monomial::variable(var, da - db)) * b;
  }
  return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  int var = std::max(a.max_variable(), b.max_variable());
  if (a.degree_in(var) == 0) return gcd(a, content_in(b, var));
  if (b.degree_in(var) == 0) return gcd(content_in(a, var), b);

  Polynomial ca = content_in(a, var);
  Polynomial cb = content_in(b, var);
  Polynomial g = gcd(ca, cb);
  Polynomial pa = exact_divide(a, ca);
  Polynomial pb = exact_divide(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  for (;;) {
    Polynomial r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return g.monic();
    pa = std::move(pb);
    pb = primitive_part(r, var);
  }
  return (g * primitive_part(pb, var)).monic();
}

}  // namespace billiard
