#include <doctest.h>

#include <cmath>

#include "billiard/diophantine.hpp"
#include "billiard/direction.hpp"
#include "billiard/numeric.hpp"
#include "billiard/polynomial.hpp"
#include "billiard/rational_function.hpp"

using namespace billiard;

namespace {
RationalFunction t(int k) { return RationalFunction::variable(k); }
RationalFunction q(long a, long b = 1) { return RationalFunction(mpq_class(a, b)); }
}  // namespace

TEST_CASE("Real carries the requested precision") {
  Real r = sqrt(Real(2L, 128));
  CHECK(r.precision() == 128);
  // 40 correct digits of sqrt(2)
  CHECK(r.to_string(40).rfind("1.414213562373095048801688724209698078569", 0) == 0);
  Real s = sqrt(Real(2L, 256));
  CHECK(std::fabs((s * s - Real(2L, 256)).to_double()) < 1e-70);
}

TEST_CASE("compare_margin keeps a marginal band") {
  Real a(1.0, 128), b(1.0 + 1e-14, 128), c(1.5, 128);
  CHECK(compare_margin(a, c, 1e-12) == MarginOrder::Less);
  CHECK(compare_margin(c, a, 1e-12) == MarginOrder::Greater);
  CHECK(compare_margin(a, b, 1e-12) == MarginOrder::Marginal);
}

TEST_CASE("floor and exact comparisons") {
  CHECK(floor(Real(-0.5, 64)).to_double() == -1.0);
  CHECK(Real(mpq_class(1, 3), 128) < Real(mpq_class(1, 2), 128));
  CHECK(Real("0.1", 128) != Real(0.1, 128));
}

TEST_CASE("polynomial gcd and exact division") {
  Polynomial x = t(1).numerator();
  Polynomial one(1);
  Polynomial a = x * x - one;
  Polynomial b = x * x - x * Polynomial(2) + one;
  CHECK(gcd(a, b) == x - one);
  CHECK(exact_divide(a, x - one) == x + one);
}

TEST_CASE("rational functions are canonical") {
  auto r = (t(1) * t(1) - q(1)) / (t(1) - q(1));
  CHECK(r == t(1) + q(1));
  CHECK(r.is_polynomial());
  auto s = (t(1) * t(2)) / (t(2) * q(2));
  CHECK(s == t(1) / q(2));
  CHECK((s - s).is_zero());
  CHECK(canonical(s) == s);
  std::vector<Real> v{Real(3L, 128), Real(5L, 128)};
  CHECK(((t(1) + t(2)) / t(2)).evaluate(v, 128).to_double() == doctest::Approx(1.6));
}

TEST_CASE("integer affine pattern") {
  auto p = integer_affine_pattern(q(3) - q(2) * t(1), 1);
  REQUIRE(p);
  CHECK(p->first == 3);
  CHECK(p->second == -2);
  CHECK_FALSE(integer_affine_pattern(t(2), 1));
  CHECK_FALSE(integer_affine_pattern(q(1, 2) * t(1), 1));
  CHECK_FALSE(integer_affine_pattern(t(1) * t(1), 1));
}

TEST_CASE("direction parsing") {
  Direction dir = parse_direction("1,sqrt(3),sqrt(2)");
  CHECK(dir.d == 2);
  CHECK_FALSE(dir.symbolic);
  CHECK(dir.theta[0].to_double() == doctest::Approx(std::sqrt(3.0)));
  CHECK(dir.theta[1].to_double() == doctest::Approx(std::sqrt(2.0)));
  CHECK(parse_direction("1,(sqrt(5)-1)/2").theta[0].to_double() == doctest::Approx(0.6180339887));
  Direction sym = parse_direction("1,t1,t2");
  CHECK(sym.symbolic);
  CHECK(parse_direction("1,2,sqrt(2)").has_rational_component);
  CHECK_FALSE(irrationality_caveat(dir).empty());

  auto kind_of = [](const char* text) {
    try {
      parse_direction(text);
    } catch (const DirectionError& e) {
      return e.kind();
    }
    FAIL("no error for " << text);
    return DirectionErrorKind::Syntax;
  };
  CHECK(kind_of("2,sqrt(3)") == DirectionErrorKind::FirstComponentNotOne);
  CHECK(kind_of("1,sqrt(3") == DirectionErrorKind::Syntax);
  CHECK(kind_of("1,-sqrt(2)") == DirectionErrorKind::NonPositiveComponent);
  CHECK(kind_of("1,t1,sqrt(2)") == DirectionErrorKind::MixedSymbolicNumeric);
}

TEST_CASE("expression printer round trip") {
  for (const char* text : {"sqrt(3)", "(sqrt(5)-1)/2", "2*t1+t2"}) {
    auto e = parse_expression(text);
    CHECK(parse_expression(to_string(e)) == e);
  }
}

TEST_CASE("integer systems") {
  // x + 2y = 3, unknowns (x, y): one kernel direction
  std::vector<std::vector<mpq_class>> rows{{1, 2}};
  std::vector<mpq_class> rhs{3};
  auto sol = solve_integer_system(rows, rhs, 2);
  REQUIRE(sol);
  CHECK(satisfies_system(rows, rhs, sol->particular));
  REQUIRE(sol->kernel.size() == 1);
  CHECK(sol->kernel[0][0] + 2 * sol->kernel[0][1] == 0);
  // gcd obstruction: 2x + 4y = 1
  CHECK_FALSE(solve_integer_system({{2, 4}}, {1}, 2));
  // rational rows: x/2 = 1 gives x = 2
  auto half = solve_integer_system({{mpq_class(1, 2)}}, {1}, 1);
  REQUIRE(half);
  CHECK(half->particular[0] == 2);
  CHECK(half->kernel.empty());
  CHECK(to_witness({mpz_class(5), mpz_class(-7)}) == IntegerWitness{5, -7});
  CHECK_FALSE(to_witness({mpz_class("100000000000000000000000")}));
}
