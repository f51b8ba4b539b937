#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "billiard/direction.hpp"
#include "billiard/numeric.hpp"
#include "billiard/rational_function.hpp"

namespace billiard {

inline Real scalar_like(long v, const Real& like) { return Real(v, like.precision()); }
inline RationalFunction scalar_like(long v, const RationalFunction&) { return RationalFunction(v); }

/// Point of the internal hyperplane, written over the basis (f_2, ..., f_{d+1}).
/// With this convention f_1 = -(theta_1, ..., theta_d) and the relation
/// f_1 + sum_j theta_j f_{j+1} = 0 holds by construction.
template <class S>
struct InternalPoint {
  std::vector<S> coords;

  std::size_t dimension() const { return coords.size(); }

  InternalPoint& operator+=(const InternalPoint& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  InternalPoint& operator-=(const InternalPoint& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  friend InternalPoint operator+(InternalPoint a, const InternalPoint& b) { return a += b; }
  friend InternalPoint operator-(InternalPoint a, const InternalPoint& b) { return a -= b; }
  friend InternalPoint operator*(const S& k, InternalPoint a) {
    for (auto& c : a.coords) c *= k;
    return a;
  }
  friend bool operator==(const InternalPoint& a, const InternalPoint& b) { return a.coords == b.coords; }
};

using NumericPoint = InternalPoint<Real>;
using SymbolicPoint = InternalPoint<RationalFunction>;

template <class S>
using Matrix = std::vector<std::vector<S>>;

/// f_1, ..., f_{d+1} in internal coordinates.
template <class S>
std::vector<InternalPoint<S>> basis_vectors(std::span<const S> theta) {
  const std::size_t d = theta.size();
  std::vector<InternalPoint<S>> out;
  InternalPoint<S> f1;
  for (const auto& t : theta) f1.coords.push_back(-t);
  out.push_back(std::move(f1));
  for (std::size_t j = 0; j < d; ++j) {
    InternalPoint<S> f;
    for (std::size_t i = 0; i < d; ++i) f.coords.push_back(scalar_like(i == j ? 1 : 0, theta[0]));
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<NumericPoint> basis_vectors(const Direction& dir);
std::vector<SymbolicPoint> symbolic_basis_vectors(int d);

/// Orthogonal projection onto the hyperplane normal to (1, theta):
/// I - theta theta^T / <theta, theta>.
template <class S>
Matrix<S> projection_matrix(std::span<const S> theta) {
  const std::size_t n = theta.size() + 1;
  std::vector<S> full;
  full.push_back(scalar_like(1, theta[0]));
  for (const auto& t : theta) full.push_back(t);
  S norm2 = scalar_like(0, theta[0]);
  for (const auto& x : full) norm2 += x * x;
  Matrix<S> p(n, std::vector<S>(n, scalar_like(0, theta[0])));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      S v = full[i] * full[j] / norm2;
      p[i][j] = (i == j ? scalar_like(1, theta[0]) : scalar_like(0, theta[0])) - v;
    }
  return p;
}

Matrix<Real> projection_matrix(const Direction& dir);

/// Ambient coordinates of an internal point: sum_j a_j pi(e_{j+1}).
template <class S>
std::vector<S> to_ambient(const InternalPoint<S>& p, const Matrix<S>& projection) {
  const std::size_t n = projection.size();
  std::vector<S> out(n, p.coords.empty() ? S{} : p.coords[0] * scalar_like(0, p.coords[0]));
  for (std::size_t j = 0; j < p.coords.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) out[i] += p.coords[j] * projection[i][j + 1];
  return out;
}

template <class S>
S dot(std::span<const S> a, std::span<const S> b) {
  S s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class NearBoundaryError : public std::runtime_error {
 public:
  NearBoundaryError(int letter, double margin, long step = 0)
      : std::runtime_error("point within epsilon of a piece boundary (piece " + std::to_string(letter) +
                           ", margin " + std::to_string(margin) + ", step " + std::to_string(step) + ")"),
        letter_(letter),
        margin_(margin),
        step_(step) {}
  int letter() const { return letter_; }
  double margin() const { return margin_; }
  long step() const { return step_; }

 private:
  int letter_;
  double margin_;
  long step_;
};

class OutsideWindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of assigning a point to one of the pieces W^(i) = {sum_{j != i} s_j f_j}.
struct PieceLocation {
  int letter = 0;                   // 1..d+1
  std::vector<Real> coefficients;   // s_1..s_{d+1}; s_letter is 0 by definition
  double margin = 0;                // min over j != letter of distance from s_j to {0, 1}
};

/// Fast classifier for points given by internal coordinates. For each
/// candidate piece it solves the d x d system over {f_j : j != i} (the
/// basis convention makes that system a column replacement of the
/// identity, solved in O(d)).
class PieceLocator {
 public:
  enum class Status { Inside, NearBoundary, Outside };
  struct Result {
    Status status = Status::Outside;
    int letter = 0;      // inside piece, or the piece that was marginal
    double margin = 0;   // distance of the deciding coefficients to {0, 1}
  };

  PieceLocator(const Direction& dir, double eps);

  /// Locates `coords` in W^(i) (lower-face pieces).
  Result classify(std::span<const Real> coords);
  /// Locates `coords` in W^(i) + f_i (upper-face pieces): the letter of the
  /// backward step.
  Result classify_upper(std::span<const Real> coords);
  /// Coefficients s_1..s_{d+1} of `coords` over {f_j : j != letter}.
  std::vector<Real> coefficients(std::span<const Real> coords, int letter);

  int d() const { return d_; }
  double epsilon() const { return eps_; }

 private:
  // Candidate classification: writes s into scratch_, returns margin sign.
  Status candidate(std::span<const Real> coords, int letter, bool upper, double& margin);
  // Same in double arithmetic; false when the margin is too close to +-eps to trust.
  bool candidate_fast(int letter, bool upper, Status& status, double& margin);
  Result classify_impl(std::span<const Real> coords, bool upper);

  int d_;
  double eps_;
  std::vector<Real> theta_;
  std::vector<double> theta_d_;
  std::vector<double> coords_d_;
  std::vector<Real> scratch_;
  Real s1_;
  Real tmp_;
};

/// Unique piece containing p with every coefficient in (eps, 1 - eps).
/// Throws NearBoundaryError or OutsideWindowError.
PieceLocation locate_piece(const NumericPoint& p, const Direction& dir, double eps);

/// Dual vector v_a (ambient coordinates) with <f_b, v_a> = 1 for b != a,
/// and alpha_a = <f_a, v_a>.
struct DualVector {
  int letter = 0;
  std::vector<Real> ambient;
  Real alpha;
};

/// Solves the d x d Gram system on the internal hyperplane for every letter.
/// Throws std::domain_error on a singular system.
std::vector<DualVector> dual_vectors(const Direction& dir);

/// Upper bound C_a on |count(a, prefix n) - n mu[a]|, valid for every n:
/// mu[a] times the width of W_theta along v_a, maximized over the
/// 2^(d+1) vertex sums of the zonotope.
Real letter_discrepancy_bound(const Direction& dir, int letter);

/// All 2^(d+1) subset sums of f_1..f_{d+1} (a superset of the zonotope vertices).
std::vector<NumericPoint> zonotope_vertex_sums(const Direction& dir);

/// Determinant of a square matrix by Gaussian elimination with partial pivoting.
Real determinant(Matrix<Real> m);

/// Volume, in internal coordinates, of W^(i) (the |det| of {f_j : j != i}).
Real piece_volume(const Direction& dir, int letter);
/// Volume of W_theta in internal coordinates (sum of piece volumes).
Real window_volume(const Direction& dir);

/// True when every d-subset of {f_1..f_{d+1}} has |det| > eps.
bool all_minors_independent(const Direction& dir, double eps);

/// Convex polygon utilities in the plane (d = 2), counter-clockwise order.
using Polygon = std::vector<NumericPoint>;

Real cross(const NumericPoint& a, const NumericPoint& b);
Real signed_area(const Polygon& poly);
Polygon parallelogram(const NumericPoint& origin, const NumericPoint& u, const NumericPoint& v);
/// Sutherland-Hodgman clip of a convex polygon by a convex polygon; points
/// within eps of a clip line are kept as on-line.
Polygon clip_convex(const Polygon& subject, const Polygon& clip, double eps);
/// Convex hull (counter-clockwise, no collinear points).
Polygon convex_hull(std::vector<NumericPoint> points);

}  // namespace billiard
