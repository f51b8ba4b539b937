#include <doctest.h>

#include <cmath>
#include <map>

#include "billiard/dynamics.hpp"
#include "billiard/language.hpp"

using namespace billiard;

namespace {

const Direction& cubic() {
  static const Direction dir = parse_direction("1,sqrt(3),sqrt(2)");
  return dir;
}

RationalFunction t(int k) { return RationalFunction::variable(k); }

// Closed forms re-typed from the frequency table, evaluated in double.
double pair_oracle(const std::string& w, double t1, double t2) {
  const double s = 1 + t1 + t2;
  static const std::map<std::string, int> kind{{"13", 0}, {"31", 0}, {"12", 1}, {"21", 1},
                                               {"23", 2}, {"32", 2}, {"22", 3}};
  auto it = kind.find(w);
  if (it == kind.end()) return 0;
  switch (it->second) {
    case 0:
      return t2 / (2 * t1 * s);
    case 1:
      return (2 * t1 - t2) / (2 * t1 * s);
    case 2:
      return t2 * (2 * t1 - 1) / (2 * t1 * s);
    default:
      return (t1 - 1) * (t1 - t2) / (t1 * s);
  }
}

}  // namespace

TEST_CASE("factor counts by hand") {
  auto tab = factor_table("121312", 2);
  CHECK(tab.total() == 5);
  CHECK(tab.complexity() == 4);
  CHECK(tab.count("12") == 2);
  CHECK(tab.count("21") == 1);
  CHECK(tab.count("13") == 1);
  CHECK(tab.count("31") == 1);
  CHECK(tab.count("22") == 0);
  CHECK(factor_table("1111", 2).count("11") == 3);
  CHECK(complexity_profile("121312", 3) == std::vector<std::size_t>{3, 4, 4});
}

TEST_CASE("letter frequencies") {
  const double t1 = std::sqrt(3.0), t2 = std::sqrt(2.0), s = 1 + t1 + t2;
  CHECK(letter_frequency(cubic(), 1).to_double() == doctest::Approx(1 / s));
  CHECK(letter_frequency(cubic(), 2).to_double() == doctest::Approx(t1 / s));
  CHECK(letter_frequency(cubic(), 3).to_double() == doctest::Approx(t2 / s));
  CHECK(letter_frequency_symbolic(2, 3) == t(2) / (RationalFunction(1) + t(1) + t(2)));
}

TEST_CASE("pair closed forms") {
  const double t1 = std::sqrt(3.0), t2 = std::sqrt(2.0);
  RationalFunction sum(0);
  for (const auto& w : length2_factors_d2()) {
    std::vector<Real> v{Real(t1, 128), Real(t2, 128)};
    CHECK(pair_frequency_symbolic(w).evaluate(v, 128).to_double() == doctest::Approx(pair_oracle(w, t1, t2)));
    sum += pair_frequency_symbolic(w);
  }
  CHECK(length2_factors_d2().size() == 7);
  CHECK(sum == RationalFunction(1));
  CHECK(pair_frequency_symbolic("11").is_zero());
  CHECK(pair_frequency_symbolic("33").is_zero());
}

TEST_CASE("pair frequencies marginalize to letters") {
  for (int a = 1; a <= 3; ++a) {
    RationalFunction row(0), col(0);
    for (int b = 1; b <= 3; ++b) {
      row += pair_frequency_symbolic(std::string{static_cast<char>('0' + a), static_cast<char>('0' + b)});
      col += pair_frequency_symbolic(std::string{static_cast<char>('0' + b), static_cast<char>('0' + a)});
    }
    CHECK(row == letter_frequency_symbolic(2, a));
    CHECK(col == letter_frequency_symbolic(2, a));
  }
}

TEST_CASE("geometric frequencies match the closed forms") {
  for (const auto& w : length2_factors_d2()) {
    auto g = geometric_frequency(cubic(), w, 1e-12);
    REQUIRE(g);
    CHECK(g->to_double() == doctest::Approx(pair_frequency_d2(cubic(), w, 1e-12).to_double()).epsilon(1e-12));
  }
  CHECK(geometric_frequency(cubic(), "11", 1e-12)->to_double() == doctest::Approx(0.0));
  // d = 1: letter 1 followed by 1 occupies an arc of length 1 - theta
  Direction golden = parse_direction("1,(sqrt(5)-1)/2");
  const double th = (std::sqrt(5.0) - 1) / 2;
  CHECK(geometric_frequency(golden, "11", 1e-12)->to_double() == doctest::Approx((1 - th) / (1 + th)));
  CHECK(geometric_frequency(golden, "22", 1e-12)->to_double() == doctest::Approx(0.0));
  CHECK_FALSE(geometric_frequency(parse_direction("1,sqrt(2),sqrt(3),sqrt(5)"), "12", 1e-12));
}

TEST_CASE("chamber reduction") {
  auto same = reduce_to_chamber(cubic(), 1e-12);
  CHECK_FALSE(same.permuted);
  CHECK(same.reduced.theta[0].to_double() == doctest::Approx(std::sqrt(3.0)));

  Direction swapped = parse_direction("1,sqrt(2),sqrt(3)");
  auto red = reduce_to_chamber(swapped, 1e-12);
  CHECK(red.permuted);
  // (sqrt 2, sqrt 3, 1) / sqrt 2
  CHECK(red.reduced.theta[0].to_double() == doctest::Approx(std::sqrt(1.5)));
  CHECK(red.reduced.theta[1].to_double() == doctest::Approx(std::sqrt(0.5)));
  for (int a = 1; a <= 3; ++a) CHECK(red.to_chamber[static_cast<std::size_t>(red.to_original[static_cast<std::size_t>(a - 1)] - 1)] == a);

  // pair frequencies of the swapped direction against the reduced closed forms
  const double r1 = std::sqrt(1.5), r2 = std::sqrt(0.5);
  for (const char* w : {"12", "21", "22", "33", "31"})
    CHECK(pair_frequency_d2(swapped, w, 1e-12).to_double() == doctest::Approx(pair_oracle(red.map_word(w), r1, r2)));
  CHECK_THROWS_AS(reduce_to_chamber(parse_direction("1,sqrt(2),sqrt(2)"), 1e-12), ChamberError);
}

TEST_CASE("empirical pair frequencies of a permuted direction") {
  Direction swapped = parse_direction("1,sqrt(2),sqrt(3)");
  auto w = generate_generic_word(swapped, 1, 0, 200000, 1e-12).word.letters;
  auto tab = factor_table(w, 2);
  CHECK(tab.complexity() == 7);
  for (const auto& [f, c] : tab.counts)
    CHECK(static_cast<double>(c) / static_cast<double>(tab.total()) ==
          doctest::Approx(pair_frequency_d2(swapped, f, 1e-12).to_double()).epsilon(0.05));
}

TEST_CASE("eigenvalue group membership") {
  const RationalFunction s = RationalFunction(1) + t(1) + t(2);
  auto mu2 = eigenvalue_group_membership(letter_frequency_symbolic(2, 2), 2);
  REQUIRE(mu2);
  CHECK(*mu2 == IntegerWitness{0, 1, 0});
  auto combo = eigenvalue_group_membership((RationalFunction(2) - RationalFunction(3) * t(2)) / s, 2);
  REQUIRE(combo);
  CHECK(*combo == IntegerWitness{2, 0, -3});
  CHECK_FALSE(eigenvalue_group_membership(pair_frequency_symbolic("31"), 2));
  CHECK_FALSE(eigenvalue_group_membership(pair_frequency_symbolic("22"), 2));
  CHECK_FALSE(eigenvalue_group_membership(t(1) * t(1) / s, 2));
}

TEST_CASE("frequency table at the reference direction") {
  auto w = generate_generic_word(cubic(), 42, 0, 100000, 1e-12).word.letters;
  auto rows = frequency_table(cubic(), w, 2, 1e-12);
  CHECK(rows.size() == 7);
  for (const auto& r : rows) {
    REQUIRE(r.closed_form);
    CHECK(r.provenance == Provenance::ClosedForm);
    CHECK(*r.abs_error() < 2e-3);
  }
  auto letters = frequency_table(cubic(), w, 1, 1e-12);
  CHECK(letters.size() == 3);
  auto tab = factor_table(w, 3);
  auto ref = reference_frequency(parse_direction("1,sqrt(2),sqrt(3),sqrt(5)"), "1", tab, 1e-12);
  CHECK(ref.provenance == Provenance::ClosedForm);
  CHECK(std::string(to_string(Provenance::Empirical)) == "empirical");
}
