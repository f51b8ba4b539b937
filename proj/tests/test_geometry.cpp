#include <doctest.h>

#include <cmath>
#include <random>

#include "billiard/dynamics.hpp"
#include "billiard/geometry.hpp"

using namespace billiard;

namespace {

const Direction& cubic() {
  static const Direction dir = parse_direction("1,sqrt(3),sqrt(2)");
  return dir;
}

// Dense Gaussian elimination with partial pivoting, A x = b.
std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

// Piece and coefficients by brute force over every candidate basis.
std::pair<int, std::vector<double>> brute_piece(const std::vector<double>& p, const std::vector<double>& theta) {
  const std::size_t d = theta.size();
  std::vector<std::vector<double>> f;
  f.push_back({});
  for (double t : theta) f[0].push_back(-t);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> e(d, 0.0);
    e[j] = 1;
    f.push_back(e);
  }
  for (std::size_t i = 0; i <= d; ++i) {
    std::vector<std::vector<double>> a(d, std::vector<double>(d));
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j <= d; ++j)
      if (j != i) cols.push_back(j);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) a[r][c] = f[cols[c]][r];
    auto x = gauss_solve(a, p);
    bool inside = true;
    for (double v : x) inside = inside && v > 0 && v < 1;
    if (inside) {
      std::vector<double> s(d + 1, 0.0);
      for (std::size_t c = 0; c < d; ++c) s[cols[c]] = x[c];
      return {static_cast<int>(i) + 1, s};
    }
  }
  return {0, {}};
}

}  // namespace

TEST_CASE("basis vectors follow the direction") {
  auto f = basis_vectors(cubic());
  REQUIRE(f.size() == 3);
  CHECK(f[0].coords[0].to_double() == doctest::Approx(-std::sqrt(3.0)));
  CHECK(f[0].coords[1].to_double() == doctest::Approx(-std::sqrt(2.0)));
  CHECK(f[1].coords[0].to_double() == 1.0);
  CHECK(f[2].coords[1].to_double() == 1.0);
}

TEST_CASE("projection matrix entries") {
  auto p = projection_matrix(cubic());
  CHECK(p[0][0].to_double() == doctest::Approx(5.0 / 6));
  CHECK(p[0][1].to_double() == doctest::Approx(-std::sqrt(3.0) / 6));
  CHECK(p[1][2].to_double() == doctest::Approx(-std::sqrt(6.0) / 6));
  // symmetric and idempotent
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::fabs((p[i][j] - p[j][i]).to_double()) < 1e-30);
      Real s(128);
      for (std::size_t k = 0; k < 3; ++k) s += p[i][k] * p[k][j];
      CHECK(std::fabs((s - p[i][j]).to_double()) < 1e-30);
    }
}

TEST_CASE("piece location agrees with brute-force elimination") {
  std::vector<double> theta{std::sqrt(3.0), std::sqrt(2.0)};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto f = basis_vectors(cubic());
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    NumericPoint p{std::vector<Real>(2, Real(128))};
    for (const auto& fi : f) p += Real(u(rng), 128) * fi;
    std::vector<double> pd{p.coords[0].to_double(), p.coords[1].to_double()};
    auto [letter, s] = brute_piece(pd, theta);
    try {
      auto loc = locate_piece(p, cubic(), 1e-9);
      REQUIRE(letter == loc.letter);
      for (std::size_t j = 0; j < 3; ++j) CHECK(loc.coefficients[j].to_double() == doctest::Approx(s[j]).epsilon(1e-9));
      ++checked;
    } catch (const NearBoundaryError&) {
    }
  }
  CHECK(checked > 450);
}

TEST_CASE("piece location in dimension 3") {
  Direction dir = parse_direction("1,sqrt(2),sqrt(3),sqrt(5)");
  std::vector<double> theta{std::sqrt(2.0), std::sqrt(3.0), std::sqrt(5.0)};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto f = basis_vectors(dir);
  for (int trial = 0; trial < 200; ++trial) {
    NumericPoint p{std::vector<Real>(3, Real(128))};
    for (const auto& fi : f) p += Real(u(rng), 128) * fi;
    std::vector<double> pd;
    for (const auto& c : p.coords) pd.push_back(c.to_double());
    try {
      auto loc = locate_piece(p, dir, 1e-9);
      CHECK(brute_piece(pd, theta).first == loc.letter);
    } catch (const NearBoundaryError&) {
    }
  }
}

TEST_CASE("boundary points are refused") {
  NumericPoint origin{std::vector<Real>(2, Real(0L, 128))};
  CHECK_THROWS_AS(locate_piece(origin, cubic(), 1e-12), NearBoundaryError);
  NumericPoint far{{Real(10L, 128), Real(10L, 128)}};
  CHECK_THROWS_AS(locate_piece(far, cubic(), 1e-12), OutsideWindowError);
}

TEST_CASE("dual vectors and letter bounds") {
  const double t1 = std::sqrt(3.0), t2 = std::sqrt(2.0);
  auto duals = dual_vectors(cubic());
  REQUIRE(duals.size() == 3);
  // alpha_a = -(sum of the other ambient components) / own component
  CHECK(duals[0].alpha.to_double() == doctest::Approx(-(t1 + t2)));
  CHECK(duals[1].alpha.to_double() == doctest::Approx(-(1 + t2) / t1));
  CHECK(duals[2].alpha.to_double() == doctest::Approx(-(1 + t1) / t2));
  const double s = 1 + t1 + t2;
  CHECK(letter_discrepancy_bound(cubic(), 1).to_double() == doctest::Approx((2 + t1 + t2) / s));
  for (int a = 1; a <= 3; ++a) CHECK(letter_discrepancy_bound(cubic(), a).to_double() > 0);
}

TEST_CASE("window volume equals the hull area of the zonotope") {
  auto hull = convex_hull(zonotope_vertex_sums(cubic()));
  CHECK(hull.size() == 6);
  CHECK(signed_area(hull).to_double() == doctest::Approx(window_volume(cubic()).to_double()).epsilon(1e-14));
  CHECK(window_volume(cubic()).to_double() == doctest::Approx(1 + std::sqrt(3.0) + std::sqrt(2.0)));
  CHECK(piece_volume(cubic(), 1).to_double() == doctest::Approx(1.0));
  CHECK(piece_volume(cubic(), 2).to_double() == doctest::Approx(std::sqrt(3.0)));
  CHECK(all_minors_independent(cubic(), 1e-12));
}

TEST_CASE("determinant") {
  Matrix<Real> m{{Real(2L, 128), Real(1L, 128)}, {Real(1L, 128), Real(3L, 128)}};
  CHECK(determinant(m).to_double() == doctest::Approx(5.0));
}

TEST_CASE("convex clipping of squares") {
  auto pt = [](double x, double y) { return NumericPoint{{Real(x, 128), Real(y, 128)}}; };
  Polygon a = parallelogram(pt(0, 0), pt(1, 0), pt(0, 1));
  Polygon b = parallelogram(pt(0.5, 0.25), pt(1, 0), pt(0, 1));
  auto c = clip_convex(a, b, 1e-12);
  CHECK(signed_area(c).to_double() == doctest::Approx(0.5 * 0.75));
  Polygon far = parallelogram(pt(5, 5), pt(1, 0), pt(0, 1));
  CHECK(std::fabs(signed_area(clip_convex(a, far, 1e-12)).to_double()) < 1e-15);
  // clockwise input is reoriented
  Polygon cw = parallelogram(pt(0, 0), pt(0, 1), pt(1, 0));
  CHECK(signed_area(cw).to_double() == doctest::Approx(1.0));
}
