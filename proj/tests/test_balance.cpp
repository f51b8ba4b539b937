#include <doctest.h>

#include <cmath>

#include "billiard/balance.hpp"
#include "billiard/geometry.hpp"

using namespace billiard;

namespace {
FrequencyValue fixed(long num, long den) { return {Real(mpq_class(num, den), 128), Provenance::ClosedForm}; }

DiscrepancySeries synthetic(double a, double b, double c) {
  DiscrepancySeries s;
  s.checkpoints = {{10, 0, 0, a, a}, {100, 0, 0, b, b}, {1000, 0, 0, c, c}};
  s.max_abs = c;
  return s;
}
}  // namespace

TEST_CASE("discrepancy by hand") {
  // "121312", factor 12, mu = 1/3: counts 0,1,1,1,1,2
  auto s = discrepancy_series("121312", "12", fixed(1, 3), {2, 4, 6}, 1);
  REQUIRE(s.checkpoints.size() == 3);
  CHECK(s.checkpoints[0].count == 1);
  CHECK(s.checkpoints[0].d == doctest::Approx(1.0 / 3));
  CHECK(s.checkpoints[1].d == doctest::Approx(-1.0 / 3));
  CHECK(s.checkpoints[2].d == doctest::Approx(0.0));
  CHECK(s.max_abs == doctest::Approx(2.0 / 3));
  CHECK(s.checkpoints[2].running_max == doctest::Approx(2.0 / 3));
  CHECK(s.samples.size() == 7);
  CHECK(s.samples[5].d == doctest::Approx(-2.0 / 3));
}

TEST_CASE("overlapping occurrences and bounds") {
  auto s = discrepancy_series("1111", "11", fixed(1, 2), {4}, 0, 0.4);
  CHECK(s.checkpoints[0].count == 3);
  CHECK(s.checkpoints[0].d == doctest::Approx(1.0));
  CHECK(s.violations > 0);
  CHECK_THROWS_AS(discrepancy_series("12", "1", fixed(1, 2), {3}), std::invalid_argument);
  CHECK_THROWS_AS(discrepancy_series("1212", "1", fixed(1, 2), {3, 2}), std::invalid_argument);
}

TEST_CASE("verdict rules") {
  CHECK(balance_verdict(synthetic(1, 1.2, 1.4), std::nullopt).kind == VerdictKind::EmpiricallyBounded);
  CHECK(balance_verdict(synthetic(1, 1.2, 1.5), std::nullopt).kind == VerdictKind::GrowthDetected);
  CHECK(balance_verdict(synthetic(0, 0, 0), std::nullopt).kind == VerdictKind::EmpiricallyBounded);
  CHECK(balance_verdict(synthetic(1, 2, 3), 3.0).kind == VerdictKind::CertifiedBounded);
  auto broken = balance_verdict(synthetic(1, 2, 3), 2.0);
  CHECK(broken.bound_violated);
  CHECK(broken.kind == VerdictKind::GrowthDetected);
  DiscrepancySeries two;
  two.checkpoints = {{1, 0, 0, 0, 0}, {2, 0, 0, 0, 0}};
  CHECK_THROWS(balance_verdict(two, std::nullopt));
  CHECK(default_checkpoints(1000) == std::vector<std::size_t>{10, 100, 1000});
  CHECK(std::string(to_string(VerdictKind::CertifiedBounded)) == "CertifiedBoundedByC");
}

TEST_CASE("letters only: all certified") {
  for (const char* text : {"1,sqrt(3),sqrt(2)", "1,sqrt(2)", "1,sqrt(2),sqrt(3),sqrt(5)"}) {
    auto r = balance_report(parse_direction(text), 1, 20000, 42, 1e-12);
    CHECK(r.entries.size() == static_cast<std::size_t>(parse_direction(text).d + 1));
    CHECK(r.count(VerdictKind::CertifiedBounded) == r.entries.size());
    CHECK_FALSE(r.caveat.empty());
  }
}

TEST_CASE("reference run: letters certified, pairs grow") {
  auto r = balance_report(parse_direction("1,sqrt(3),sqrt(2)"), 2, 1000000, 42, 1e-12);
  CHECK(r.count(VerdictKind::CertifiedBounded) == 3);
  CHECK(r.count(VerdictKind::GrowthDetected) == 7);
  CHECK(r.checkpoints == std::vector<std::size_t>{10000, 100000, 1000000});
  for (const auto& e : r.entries)
    if (e.series.factor.size() == 1) CHECK(e.series.violations == 0);
}
