#include "billiard/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace billiard {

std::vector<NumericPoint> basis_vectors(const Direction& dir) {
  dir.require_numeric("basis_vectors");
  return basis_vectors<Real>(std::span<const Real>(dir.theta));
}

std::vector<SymbolicPoint> symbolic_basis_vectors(int d) {
  auto t = symbolic_components(d);
  return basis_vectors<RationalFunction>(std::span<const RationalFunction>(t));
}

Matrix<Real> projection_matrix(const Direction& dir) {
  dir.require_numeric("projection_matrix");
  return projection_matrix<Real>(std::span<const Real>(dir.theta));
}

// ---------------------------------------------------------------------------
// Piece location

PieceLocator::PieceLocator(const Direction& dir, double eps)
    : d_(dir.d),
      eps_(eps),
      theta_(dir.theta),
      coords_d_(static_cast<std::size_t>(dir.d)),
      scratch_(static_cast<std::size_t>(dir.d) + 1, Real(dir.precision)),
      s1_(dir.precision),
      tmp_(dir.precision) {
  dir.require_numeric("PieceLocator");
  if (!(eps >= 0)) throw std::invalid_argument("epsilon must be non-negative");
  for (const auto& t : theta_) theta_d_.push_back(t.to_double());
}

bool PieceLocator::candidate_fast(int letter, bool upper, Status& status, double& margin) {
  // Rounding error here is around 1e-14 for window-sized coordinates; a
  // margin within kSlack of +-eps is re-decided at full precision.
  constexpr double kSlack = 1e-9;
  const int d = d_;
  auto coord = [&](int j) {
    double x = coords_d_[static_cast<std::size_t>(j)];
    if (upper) {
      if (letter == 1) x += theta_d_[static_cast<std::size_t>(j)];
      else if (letter == j + 2) x -= 1.0;
    }
    return x;
  };
  double worst = std::numeric_limits<double>::infinity();
  auto take = [&](double s) { worst = std::min({worst, s, 1.0 - s}); };
  if (letter == 1) {
    for (int j = 0; j < d; ++j) take(coord(j));
  } else {
    const int k = letter - 2;
    const double s1 = -coord(k) / theta_d_[static_cast<std::size_t>(k)];
    take(s1);
    for (int j = 0; j < d; ++j)
      if (j != k) take(coord(j) + theta_d_[static_cast<std::size_t>(j)] * s1);
  }
  margin = worst;
  if (std::fabs(worst) <= eps_ + kSlack) return false;
  status = worst > eps_ ? Status::Inside : Status::Outside;
  return true;
}

PieceLocator::Status PieceLocator::candidate(std::span<const Real> a, int letter, bool upper, double& margin) {
  // scratch_[j] = s_{j+1}; for the upper faces the point is shifted by -f_letter first.
  const int d = d_;
  auto coord = [&](int j, mpfr_ptr out) {  // j in 0..d-1, writes the (possibly shifted) coordinate
    mpfr_set(out, a[static_cast<std::size_t>(j)].get(), MPFR_RNDN);
    if (!upper) return;
    if (letter == 1)
      mpfr_add(out, out, theta_[static_cast<std::size_t>(j)].get(), MPFR_RNDN);
    else if (letter == j + 2)
      mpfr_sub_ui(out, out, 1, MPFR_RNDN);
  };

  if (letter == 1) {
    mpfr_set_zero(scratch_[0].get(), 1);
    for (int j = 0; j < d; ++j) coord(j, scratch_[static_cast<std::size_t>(j) + 1].get());
  } else {
    const int k = letter - 2;  // coordinate index of f_letter
    coord(k, s1_.get());
    mpfr_div(s1_.get(), s1_.get(), theta_[static_cast<std::size_t>(k)].get(), MPFR_RNDN);
    mpfr_neg(s1_.get(), s1_.get(), MPFR_RNDN);
    mpfr_set(scratch_[0].get(), s1_.get(), MPFR_RNDN);
    for (int j = 0; j < d; ++j) {
      mpfr_ptr out = scratch_[static_cast<std::size_t>(j) + 1].get();
      if (j == k) {
        mpfr_set_zero(out, 1);
        continue;
      }
      coord(j, out);
      mpfr_mul(tmp_.get(), theta_[static_cast<std::size_t>(j)].get(), s1_.get(), MPFR_RNDN);
      mpfr_add(out, out, tmp_.get(), MPFR_RNDN);
    }
  }

  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= d; ++i) {
    if (i + 1 == letter) continue;
    mpfr_srcptr s = scratch_[static_cast<std::size_t>(i)].get();
    mpfr_ui_sub(tmp_.get(), 1, s, MPFR_RNDN);
    double lo = mpfr_get_d(s, MPFR_RNDN);
    double hi = mpfr_get_d(tmp_.get(), MPFR_RNDN);
    worst = std::min({worst, lo, hi});
  }
  margin = worst;
  if (worst > eps_) return Status::Inside;
  if (worst < -eps_) return Status::Outside;
  return Status::NearBoundary;
}

namespace {

template <class F>
PieceLocator::Result combine(int d, F&& candidate) {
  PieceLocator::Result out;
  int inside = 0;
  for (int letter = 1; letter <= d + 1; ++letter) {
    double margin = 0;
    auto st = candidate(letter, margin);
    if (st == PieceLocator::Status::NearBoundary) {
      return {PieceLocator::Status::NearBoundary, letter, margin};
    }
    if (st == PieceLocator::Status::Inside) {
      ++inside;
      out = {PieceLocator::Status::Inside, letter, margin};
    }
  }
  if (inside > 1) out.status = PieceLocator::Status::NearBoundary;
  return out;
}

}  // namespace

PieceLocator::Result PieceLocator::classify_impl(std::span<const Real> coords, bool upper) {
  for (int j = 0; j < d_; ++j) coords_d_[static_cast<std::size_t>(j)] = coords[static_cast<std::size_t>(j)].to_double();
  bool decided = true;
  auto fast = combine(d_, [&](int letter, double& m) {
    Status st = Status::Outside;
    if (!candidate_fast(letter, upper, st, m)) {
      decided = false;
      return Status::NearBoundary;  // stops the scan
    }
    return st;
  });
  if (decided) return fast;
  return combine(d_, [&](int letter, double& m) { return candidate(coords, letter, upper, m); });
}

PieceLocator::Result PieceLocator::classify(std::span<const Real> coords) { return classify_impl(coords, false); }

PieceLocator::Result PieceLocator::classify_upper(std::span<const Real> coords) { return classify_impl(coords, true); }

std::vector<Real> PieceLocator::coefficients(std::span<const Real> coords, int letter) {
  double unused = 0;
  candidate(coords, letter, false, unused);
  return scratch_;
}

PieceLocation locate_piece(const NumericPoint& p, const Direction& dir, double eps) {
  if (static_cast<int>(p.coords.size()) != dir.d) throw std::invalid_argument("point dimension mismatch");
  PieceLocator loc(dir, eps);
  auto r = loc.classify(p.coords);
  switch (r.status) {
    case PieceLocator::Status::NearBoundary:
      throw NearBoundaryError(r.letter, r.margin);
    case PieceLocator::Status::Outside:
      throw OutsideWindowError("point lies outside the window");
    case PieceLocator::Status::Inside:
      break;
  }
  return {r.letter, loc.coefficients(p.coords, r.letter), r.margin};
}

// ---------------------------------------------------------------------------
// Linear algebra

namespace {

std::vector<Real> solve_linear(Matrix<Real> a, std::vector<Real> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    if (a[piv][c].is_zero()) throw std::domain_error("singular linear system");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      Real f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Real> x(n, Real(b[0].precision()));
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<Real> column(const Matrix<Real>& m, std::size_t c) {
  std::vector<Real> out;
  for (const auto& row : m) out.push_back(row[c]);
  return out;
}

Real dot_real(const std::vector<Real>& a, const std::vector<Real>& b) {
  return dot<Real>(std::span<const Real>(a), std::span<const Real>(b));
}

}  // namespace

Real determinant(Matrix<Real> a) {
  const std::size_t n = a.size();
  if (n == 0) return Real(1L, kDefaultPrecision);
  Real det(1L, a[0][0].precision());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    if (a[piv][c].is_zero()) return Real(0L, det.precision());
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Real f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

std::vector<DualVector> dual_vectors(const Direction& dir) {
  dir.require_numeric("dual_vectors");
  const int d = dir.d;
  const auto proj = projection_matrix(dir);
  std::vector<std::vector<Real>> cols;  // ambient images of f_1..f_{d+1}
  for (int i = 0; i <= d; ++i) cols.push_back(column(proj, static_cast<std::size_t>(i)));

  std::vector<DualVector> out;
  for (int a = 1; a <= d + 1; ++a) {
    // Unknown x over (f_2..f_{d+1}); rows: <f_b, sum_j x_j f_{j+1}> = 1 for b != a.
    Matrix<Real> g;
    std::vector<Real> rhs;
    for (int b = 1; b <= d + 1; ++b) {
      if (b == a) continue;
      std::vector<Real> row;
      for (int j = 1; j <= d; ++j) row.push_back(dot_real(cols[static_cast<std::size_t>(b - 1)], cols[static_cast<std::size_t>(j)]));
      g.push_back(std::move(row));
      rhs.emplace_back(1L, dir.precision);
    }
    auto x = solve_linear(std::move(g), std::move(rhs));
    std::vector<Real> v(static_cast<std::size_t>(d) + 1, Real(dir.precision));
    for (int j = 1; j <= d; ++j)
      for (int i = 0; i <= d; ++i) v[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(j - 1)] * cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    Real alpha = dot_real(cols[static_cast<std::size_t>(a - 1)], v);
    out.push_back({a, std::move(v), std::move(alpha)});
  }
  return out;
}

std::vector<NumericPoint> zonotope_vertex_sums(const Direction& dir) {
  const auto f = basis_vectors(dir);
  const std::size_t n = f.size();
  std::vector<NumericPoint> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    NumericPoint p{std::vector<Real>(static_cast<std::size_t>(dir.d), Real(dir.precision))};
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) p += f[i];
    out.push_back(std::move(p));
  }
  return out;
}

Real letter_discrepancy_bound(const Direction& dir, int letter) {
  dir.require_numeric("letter_discrepancy_bound");
  if (letter < 1 || letter > dir.d + 1) throw std::out_of_range("letter out of range");
  const auto duals = dual_vectors(dir);
  const auto& v = duals[static_cast<std::size_t>(letter - 1)].ambient;
  const auto proj = projection_matrix(dir);

  Real lo(dir.precision), hi(dir.precision);
  bool first = true;
  for (const auto& p : zonotope_vertex_sums(dir)) {
    auto amb = to_ambient(p, proj);
    Real h = dot_real(amb, v);
    if (first || h < lo) lo = h;
    if (first || h > hi) hi = h;
    first = false;
  }
  Real total(1L, dir.precision);
  for (const auto& t : dir.theta) total += t;
  Real mu = dir.component(letter - 1) / total;
  return mu * (hi - lo);
}

namespace {

Matrix<Real> piece_matrix(const Direction& dir, int letter) {
  const auto f = basis_vectors(dir);
  Matrix<Real> m(static_cast<std::size_t>(dir.d));
  for (int i = 1; i <= dir.d + 1; ++i) {
    if (i == letter) continue;
    for (int r = 0; r < dir.d; ++r) m[static_cast<std::size_t>(r)].push_back(f[static_cast<std::size_t>(i - 1)].coords[static_cast<std::size_t>(r)]);
  }
  return m;
}

}  // namespace

Real piece_volume(const Direction& dir, int letter) {
  dir.require_numeric("piece_volume");
  if (letter < 1 || letter > dir.d + 1) throw std::out_of_range("letter out of range");
  return abs(determinant(piece_matrix(dir, letter)));
}

Real window_volume(const Direction& dir) {
  Real v(dir.precision);
  for (int i = 1; i <= dir.d + 1; ++i) v += piece_volume(dir, i);
  return v;
}

bool all_minors_independent(const Direction& dir, double eps) {
  for (int i = 1; i <= dir.d + 1; ++i)
    if (piece_volume(dir, i).to_double() <= eps) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Planar polygons

Real cross(const NumericPoint& a, const NumericPoint& b) { return a.coords[0] * b.coords[1] - a.coords[1] * b.coords[0]; }

Real signed_area(const Polygon& poly) {
  if (poly.empty()) return Real(kDefaultPrecision);
  Real s(poly[0].coords[0].precision());
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  mpfr_div_ui(s.get(), s.get(), 2, MPFR_RNDN);
  return s;
}

Polygon parallelogram(const NumericPoint& origin, const NumericPoint& u, const NumericPoint& v) {
  Polygon p{origin, origin + u, origin + u + v, origin + v};
  if (signed_area(p).sign() < 0) std::reverse(p.begin(), p.end());
  return p;
}

Polygon clip_convex(const Polygon& subject, const Polygon& clip, double eps) {
  Polygon out = subject;
  for (std::size_t e = 0; e < clip.size() && !out.empty(); ++e) {
    const NumericPoint& c0 = clip[e];
    const NumericPoint& c1 = clip[(e + 1) % clip.size()];
    const NumericPoint edge = c1 - c0;
    Polygon in = std::move(out);
    out.clear();
    auto side = [&](const NumericPoint& p) { return cross(edge, p - c0).to_double(); };
    for (std::size_t i = 0; i < in.size(); ++i) {
      const NumericPoint& p = in[i];
      const NumericPoint& q = in[(i + 1) % in.size()];
      double sp = side(p), sq = side(q);
      if (sp >= -eps) out.push_back(p);
      if ((sp > eps && sq < -eps) || (sp < -eps && sq > eps)) {
        Real a = cross(edge, p - c0), b = cross(edge, q - c0);
        Real t = a / (a - b);
        out.push_back(p + t * (q - p));
      }
    }
  }
  // Drop consecutive duplicates.
  Polygon clean;
  for (const auto& p : out) {
    if (!clean.empty()) {
      NumericPoint diff = p - clean.back();
      if (std::fabs(diff.coords[0].to_double()) <= eps && std::fabs(diff.coords[1].to_double()) <= eps) continue;
    }
    clean.push_back(p);
  }
  while (clean.size() > 1) {
    NumericPoint diff = clean.front() - clean.back();
    if (std::fabs(diff.coords[0].to_double()) <= eps && std::fabs(diff.coords[1].to_double()) <= eps)
      clean.pop_back();
    else
      break;
  }
  return clean;
}

Polygon convex_hull(std::vector<NumericPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const NumericPoint& a, const NumericPoint& b) {
    if (a.coords[0] != b.coords[0]) return a.coords[0] < b.coords[0];
    return a.coords[1] < b.coords[1];
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const NumericPoint& o, const NumericPoint& a, const NumericPoint& b) { return cross(a - o, b - o); };
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p).sign() <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace billiard
