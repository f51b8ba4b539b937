#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "billiard/dynamics.hpp"
#include "billiard/language.hpp"

using namespace billiard;

namespace {

const Direction& cubic() {
  static const Direction dir = parse_direction("1,sqrt(3),sqrt(2)");
  return dir;
}

std::set<std::string> factors(const std::string& w, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  return out;
}

}  // namespace

TEST_CASE("orbit coding equals repeated exchange steps") {
  NumericPoint m = sample_generic_parameter(cubic(), 9, 1e-12);
  auto word = generate_word(m, cubic(), 0, 500, 1e-12);
  NumericPoint p = m;
  std::string naive;
  for (int k = 0; k < 500; ++k) {
    auto [a, q] = exchange_step(p, cubic(), 1e-12);
    naive.push_back(static_cast<char>('0' + a));
    p = q;
  }
  CHECK(naive == word.letters);
}

TEST_CASE("backward coding retraces the forward orbit") {
  NumericPoint m = sample_generic_parameter(cubic(), 4, 1e-12);
  Orbit orbit(cubic(), m, 1e-12);
  std::string fwd;
  for (int k = 0; k < 300; ++k) fwd.push_back(static_cast<char>('0' + orbit.forward()));
  auto back = generate_word(orbit.point(), cubic(), 300, 0, 1e-12);
  CHECK(back.letters == fwd);
  CHECK(back.origin == 300);
}

TEST_CASE("two-sided word is consistent") {
  NumericPoint m = sample_generic_parameter(cubic(), 5, 1e-12);
  auto both = generate_word(m, cubic(), 100, 100, 1e-12);
  auto fwd = generate_word(m, cubic(), 0, 100, 1e-12);
  CHECK(both.size() == 200);
  CHECK(both.letters.substr(100) == fwd.letters);
  CHECK(both.letter_at(100) == fwd.letter_at(0));
}

TEST_CASE("golden Sturmian word is a rotation coding") {
  Direction dir = parse_direction("1,(sqrt(5)-1)/2");
  const long double theta = (std::sqrt(5.0L) - 1) / 2;
  NumericPoint m = sample_generic_parameter(dir, 1, 1e-12);
  auto w = generate_word(m, dir, 0, 2000, 1e-12);
  // internal window [-theta, 1]: letter 1 on [0, 1] moving by -theta, letter 2 on [-theta, 0) moving by +1
  long double x = m.coords[0].to_long_double();
  std::string expect;
  for (int k = 0; k < 2000; ++k) {
    const bool one = x >= 0;
    expect.push_back(one ? '1' : '2');
    x = one ? x - theta : x + 1;
  }
  CHECK(w.letters == expect);
  CHECK(factors(w.letters, 1).size() == 2);
  CHECK(factors(w.letters, 5).size() == 6);  // n + 1
}

TEST_CASE("sampling is deterministic and avoids boundaries") {
  auto a = sample_generic_parameter(cubic(), 42, 1e-12);
  auto b = sample_generic_parameter(cubic(), 42, 1e-12);
  auto c = sample_generic_parameter(cubic(), 43, 1e-12);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  auto g = generate_generic_word(cubic(), 42, 0, 1000, 1e-12);
  CHECK(g.seed_used == 42);
  CHECK(g.word.min_margin > 1e-12);
  NumericPoint vertex{std::vector<Real>(2, Real(0L, 128))};
  CHECK_THROWS_AS(generate_word(vertex, cubic(), 0, 10, 1e-12), NearBoundaryError);
}

TEST_CASE("tile lengths") {
  auto len = tile_lengths(cubic());
  CHECK(len[0].to_double() == doctest::Approx(1 / std::sqrt(6.0)));
  CHECK(len[1].to_double() == doctest::Approx(std::sqrt(0.5)));
  CHECK(len[2].to_double() == doctest::Approx(1 / std::sqrt(3.0)));
  NumericPoint m = sample_generic_parameter(cubic(), 3, 1e-12);
  auto seg = cut_project_segment(m, cubic(), 100, 1e-12);
  CHECK(seg.letters.size() == 100);
  CHECK(seg.lengths[0].to_double() == doctest::Approx(len[static_cast<std::size_t>(seg.letters[0] - 1)].to_double()));
}

TEST_CASE("mirror-law billiard has the same factors as the coding") {
  BilliardState s = billiard_start(cubic(), 42);
  std::string bounce = billiard_simulate(s, cubic(), 20000, 1e-12);
  auto coded = generate_generic_word(cubic(), 42, 0, 20000, 1e-12).word.letters;
  for (std::size_t n = 1; n <= 5; ++n) CHECK(factors(bounce, n) == factors(coded, n));
}

TEST_CASE("billiard bounces at exact faces") {
  Direction dir = parse_direction("1,sqrt(2)");
  BilliardState s = billiard_start(dir, 7);
  std::string w = billiard_simulate(s, dir, 50, 1e-12);
  CHECK(w.size() == 50);
  for (std::size_t i = 0; i < s.position.size(); ++i) {
    CHECK(s.position[i].to_double() >= -1e-30);
    CHECK(s.position[i].to_double() <= 1 + 1e-30);
  }
}

TEST_CASE("word file round trip") {
  auto w = generate_generic_word(cubic(), 42, 3, 50, 1e-12).word;
  std::stringstream io;
  write_word(io, w);
  auto r = read_word(io);
  CHECK(r.theta == "1,sqrt(3),sqrt(2)");
  CHECK(r.origin == 3);
  CHECK(r.letters == w.letters);
  std::stringstream bad("no header\n123\n");
  CHECK_THROWS(read_word(bad));
}
