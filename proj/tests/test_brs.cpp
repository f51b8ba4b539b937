#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "billiard/brs.hpp"
#include "billiard/language.hpp"

using namespace billiard;

namespace {

const Direction& cubic() {
  static const Direction dir = parse_direction("1,sqrt(3),sqrt(2)");
  return dir;
}

RationalFunction t(int k) { return RationalFunction::variable(k); }
RationalFunction q(long a, long b = 1) { return RationalFunction(mpq_class(a, b)); }
SymbolicPoint sp(RationalFunction x, RationalFunction y) { return SymbolicPoint{{std::move(x), std::move(y)}}; }

const std::vector<SymbolicPoint>& f() {
  static const auto basis = symbolic_basis_vectors(2);
  return basis;
}

CellPolygon polygon(std::vector<SymbolicPoint> pts) {
  CellPolygon p{"test", {}};
  for (auto& v : pts) p.vertices.push_back(make_hybrid(std::move(v), cubic()));
  return p;
}

const CellPolygon& cell(const std::vector<CellPolygon>& cells, const std::string& label) {
  auto it = std::find_if(cells.begin(), cells.end(), [&](const CellPolygon& c) { return c.label == label; });
  REQUIRE(it != cells.end());
  return *it;
}

bool has_vertex(const CellPolygon& c, const SymbolicPoint& p) {
  return std::any_of(c.vertices.begin(), c.vertices.end(), [&](const HybridPoint& v) { return v.sym == p; });
}

}  // namespace

TEST_CASE("seven cells with exact areas") {
  auto cells = build_cells_d2(cubic(), 1e-12);
  REQUIRE(cells.size() == 7);
  const RationalFunction window = q(1) + t(1) + t(2);
  std::map<std::string, int> sizes;
  for (const auto& c : cells) {
    sizes[c.label] = static_cast<int>(c.size());
    CHECK(c.area() / window == pair_frequency_symbolic(c.label));
  }
  CHECK(sizes == std::map<std::string, int>{{"12", 4}, {"13", 3}, {"21", 4}, {"22", 4}, {"23", 4}, {"31", 3}, {"32", 4}});
}

TEST_CASE("cell 22 is the parallelogram KBCD") {
  auto cells = build_cells_d2(cubic(), 1e-12);
  const auto& c = cell(cells, "22");
  const SymbolicPoint K = q(-1) * f()[1];
  const SymbolicPoint A = f()[0];
  const SymbolicPoint B = f()[0] + (t(2) / t(1)) * f()[2];
  const SymbolicPoint C = f()[0] + f()[2];
  const SymbolicPoint D = f()[2] + (q(1) / t(1)) * f()[0];
  CHECK(has_vertex(c, K));
  CHECK(has_vertex(c, B));
  CHECK(has_vertex(c, C));
  CHECK(has_vertex(c, D));
  CHECK(B - K == (q(1) - q(1) / t(1)) * f()[0]);
  CHECK(B - A == (t(2) / t(1)) * f()[2]);
  CHECK(symmetry_center(c));
}

TEST_CASE("return group membership") {
  auto w1 = group_membership(f()[0]);
  REQUIRE(w1);
  CHECK(*w1 == IntegerWitness{1, 0, 0});
  const SymbolicPoint K = q(-1) * f()[1];
  const SymbolicPoint C = f()[0] + f()[2];
  auto ck = group_membership(C - K);
  REQUIRE(ck);
  CHECK(*ck == IntegerWitness{1, 1, 1});
  CHECK(verify_group_witness(C - K, *ck));
  CHECK_FALSE(group_membership(f()[0] + (t(2) / t(1)) * f()[2]));
  CHECK_FALSE(group_membership(f()[2] + (q(1) / t(1)) * f()[0]));
  CHECK_FALSE(group_membership(sp(q(1, 2), q(0))));
  auto mixed = group_membership(sp(q(3) - q(2) * t(1), q(-2) * t(2)));
  REQUIRE(mixed);
  CHECK(*mixed == IntegerWitness{2, 3, 0});
  CHECK_FALSE(verify_group_witness(f()[0], {0, 1, 0}));
}

TEST_CASE("symmetry centre") {
  auto para = polygon({sp(q(0), q(0)), f()[1], f()[1] + f()[2], f()[2]});
  auto c = symmetry_center(para);
  REQUIRE(c);
  CHECK(*c == sp(q(1, 2), q(1, 2)));
  CHECK_FALSE(symmetry_center(polygon({sp(q(0), q(0)), f()[1], f()[2]})));
  CHECK_FALSE(symmetry_center(polygon({sp(q(0), q(0)), sp(q(2), q(0)), sp(q(2), q(1)), sp(q(0), q(3))})));
}

TEST_CASE("pieces are bounded remainder sets") {
  const SymbolicPoint o = sp(q(0), q(0));
  for (int i = 0; i < 3; ++i) {
    std::vector<SymbolicPoint> g;
    for (int j = 0; j < 3; ++j)
      if (j != i) g.push_back(f()[static_cast<std::size_t>(j)]);
    auto poly = polygon({o, g[0], g[0] + g[1], g[1]});
    if (cross(poly.vertices[1].num, poly.vertices[3].num).sign() < 0) std::reverse(poly.vertices.begin(), poly.vertices.end());
    auto v = gl_polygon_verdict(poly, cubic(), 1e-12);
    CHECK(v.status == BRSStatus::BRS);
    CHECK(v.reason == BRSReason::AllConditionsPass);
  }
}

TEST_CASE("condition 1 can fail") {
  // unit vector f_2 and a non-group multiple of f_3
  const SymbolicPoint o = sp(q(0), q(0));
  const SymbolicPoint u = f()[1];
  const SymbolicPoint v = (t(1) / q(2)) * f()[2];
  auto poly = polygon({o, u, u + v, v});
  auto r = parallel_edge_condition1({poly.vertices[0], poly.vertices[1]}, {poly.vertices[2], poly.vertices[3]}, cubic(),
                                    1e-12);
  CHECK(r.decision == Decision::Fails);
  auto verdict = gl_polygon_verdict(poly, cubic(), 1e-12);
  CHECK(verdict.status == BRSStatus::NotBRS);
  CHECK(verdict.reason == BRSReason::Condition1Fail);
}

TEST_CASE("condition 1 at KBCD is witnessed by C - K") {
  auto cells = build_cells_d2(cubic(), 1e-12);
  const auto& c = cell(cells, "22");
  const SymbolicPoint K = q(-1) * f()[1];
  const SymbolicPoint B = f()[0] + (t(2) / t(1)) * f()[2];
  const SymbolicPoint C = f()[0] + f()[2];
  const SymbolicPoint D = f()[2] + (q(1) / t(1)) * f()[0];
  auto hp = [&](const SymbolicPoint& p) { return make_hybrid(p, cubic()); };
  auto r = parallel_edge_condition1({hp(K), hp(B)}, {hp(D), hp(C)}, cubic(), 1e-12);
  CHECK(r.decision == Decision::Holds);
  CHECK(r.kernel_rank <= 1);
  CHECK(r.shift_value >= -1 - 1e-12);
  CHECK(r.witness == IntegerWitness{1, 1, 1});
  CHECK(has_vertex(c, K));
}

TEST_CASE("verdicts at the reference direction") {
  auto rep = brs_report(cubic(), 1e-12);
  REQUIRE(rep.cells.size() == 7);
  CHECK(rep.count(BRSStatus::NotBRS, BRSReason::NoSymmetryCenter) == 6);
  CHECK(rep.count(BRSStatus::NotBRS, BRSReason::Condition2Fail) == 1);
  for (const auto& c : rep.cells) {
    if (c.cell.label == "22") CHECK(c.verdict.reason == BRSReason::Condition2Fail);
    CHECK(c.area_share.to_double() == doctest::Approx(pair_frequency_d2(cubic(), c.cell.label, 1e-12).to_double()).epsilon(1e-12));
  }
  CHECK_FALSE(rep.any_undetermined());
  auto w = gl_polygon_verdict(window_polygon(cubic()), cubic(), 1e-12);
  CHECK(w.status == BRSStatus::BRS);
}

TEST_CASE("swapped and rational directions") {
  auto rep = brs_report(parse_direction("1,sqrt(2),sqrt(3)"), 1e-12);
  CHECK(rep.permuted);
  CHECK(rep.count(BRSStatus::NotBRS, BRSReason::NoSymmetryCenter) == 6);
  CHECK(rep.count(BRSStatus::NotBRS, BRSReason::Condition2Fail) == 1);
  auto rat = brs_report(parse_direction("1,2,sqrt(2)"), 1e-12);
  CHECK(rat.caveat.find("rational") != std::string::npos);
  CHECK(rat.cells.size() == 7);
  CHECK_THROWS_AS(build_cells_d2(parse_direction("1,sqrt(2),sqrt(3)"), 1e-12), ChamberError);
}

TEST_CASE("torus dictionary") {
  auto alpha = torus_alpha_symbolic(2);
  CHECK(torus_image(f()[0]) == alpha);
  auto img2 = torus_image(f()[1]);
  CHECK(img2[0] == alpha[0] - q(1));
  CHECK(img2[1] == alpha[1]);
  auto a = torus_membership(alpha);
  REQUIRE(a);
  CHECK(a->k == 1);
  CHECK(a->z == std::vector<long>{0, 0});
  auto b = torus_membership({alpha[0] + q(1), alpha[1]});
  REQUIRE(b);
  CHECK(b->z == std::vector<long>{1, 0});
  CHECK_FALSE(torus_membership({alpha[0] * alpha[0], alpha[1]}));
  CHECK_FALSE(torus_membership({q(1, 2), q(0)}));
  auto num = torus_alpha(cubic());
  CHECK(num[0].to_double() == doctest::Approx(std::sqrt(3.0) / (1 + std::sqrt(3.0) + std::sqrt(2.0))));
}

TEST_CASE("parallelepiped and Kesten criteria") {
  auto alpha = torus_alpha_symbolic(2);
  auto v = parallelepiped_brs({alpha, {alpha[0] + q(1), alpha[1]}});
  CHECK(v.status == BRSStatus::BRS);
  CHECK(v.reason == BRSReason::ParallelepipedCriterion);
  CHECK_THROWS_AS(parallelepiped_brs({alpha, alpha}), std::invalid_argument);
  CHECK_THROWS_AS(parallelepiped_brs({alpha, {q(1, 2), q(0)}}), std::invalid_argument);
  auto a1 = torus_alpha_symbolic(1)[0];
  CHECK(kesten_interval(a1).status == BRSStatus::BRS);
  CHECK(kesten_interval(q(1) - a1).status == BRSStatus::BRS);
  CHECK(kesten_interval(q(1, 2)).status == BRSStatus::NotBRS);
}

TEST_CASE("torus visits by brute force") {
  // d = 1: interval [0, alpha) for golden alpha, counted directly
  Direction golden = parse_direction("1,(sqrt(5)-1)/2");
  auto alpha = torus_alpha(golden);
  auto s = torus_visit_series(alpha, {{alpha[0]}}, {100, 1000, 10000});
  const long double a = alpha[0].to_long_double();
  std::size_t count = 0;
  for (std::size_t n = 0; n < 10000; ++n) {
    long double x = static_cast<long double>(n) * a;
    x -= std::floor(x);
    if (x < a) ++count;
  }
  CHECK(s.checkpoints.back().count == count);
  CHECK(s.max_abs < 2);

  auto a2 = torus_alpha(cubic());
  std::vector<Real> g2{a2[0] + Real(1L, 128), a2[1]};
  auto p = torus_visit_series(a2, {a2, g2}, {1000, 10000, 100000});
  CHECK(p.mu.to_double() == doctest::Approx(a2[1].to_double()));
  CHECK(p.max_abs < 2);
}
