#include "billiard/brs.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "billiard/language.hpp"

namespace billiard {

namespace {

RationalFunction cross_sym(const SymbolicPoint& a, const SymbolicPoint& b) {
  return a.coords[0] * b.coords[1] - a.coords[1] * b.coords[0];
}

SymbolicPoint sym_zero(std::size_t d) { return SymbolicPoint{std::vector<RationalFunction>(d, RationalFunction(0))}; }

HybridPoint operator+(const HybridPoint& a, const HybridPoint& b) { return {a.sym + b.sym, a.num + b.num}; }
HybridPoint operator-(const HybridPoint& a, const HybridPoint& b) { return {a.sym - b.sym, a.num - b.num}; }

// Sign of cross(c1 - c0, p - c0): numeric outside the eps band, exact inside it.
int side_sign(const HybridPoint& c0, const HybridPoint& c1, const HybridPoint& p, double eps) {
  const double s = cross(c1.num - c0.num, p.num - c0.num).to_double();
  if (s > eps) return 1;
  if (s < -eps) return -1;
  if (cross_sym(c1.sym - c0.sym, p.sym - c0.sym).is_zero()) return 0;
  throw DegenerateError("orientation within epsilon of zero but not exactly zero");
}

bool same_point(const HybridPoint& a, const HybridPoint& b, double eps) {
  for (std::size_t i = 0; i < a.num.coords.size(); ++i)
    if (std::fabs((a.num.coords[i] - b.num.coords[i]).to_double()) > eps) return false;
  if (a.sym == b.sym) return true;
  throw DegenerateError("vertices within epsilon but not equal");
}

std::vector<HybridPoint> clip(const std::vector<HybridPoint>& subject, const std::vector<HybridPoint>& window,
                              const Direction& dir, double eps) {
  std::vector<HybridPoint> out = subject;
  for (std::size_t e = 0; e < window.size() && !out.empty(); ++e) {
    const HybridPoint& c0 = window[e];
    const HybridPoint& c1 = window[(e + 1) % window.size()];
    const SymbolicPoint edge = c1.sym - c0.sym;
    std::vector<HybridPoint> in = std::move(out);
    out.clear();
    for (std::size_t i = 0; i < in.size(); ++i) {
      const HybridPoint& p = in[i];
      const HybridPoint& q = in[(i + 1) % in.size()];
      const int sp = side_sign(c0, c1, p, eps);
      const int sq = side_sign(c0, c1, q, eps);
      if (sp >= 0) out.push_back(p);
      if (sp * sq < 0) {
        RationalFunction a = cross_sym(edge, p.sym - c0.sym);
        RationalFunction b = cross_sym(edge, q.sym - c0.sym);
        RationalFunction t = a / (a - b);
        out.push_back(make_hybrid(p.sym + t * (q.sym - p.sym), dir));
      }
    }
  }
  return out;
}

void clean(std::vector<HybridPoint>& poly, double eps) {
  bool changed = true;
  while (changed && poly.size() >= 2) {
    changed = false;
    for (std::size_t i = 0; i < poly.size() && poly.size() >= 2; ++i) {
      if (same_point(poly[i], poly[(i + 1) % poly.size()], eps)) {
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>((i + 1) % poly.size()));
        changed = true;
      }
    }
    for (std::size_t i = 0; i < poly.size() && poly.size() >= 3; ++i) {
      const auto& prev = poly[(i + poly.size() - 1) % poly.size()];
      const auto& next = poly[(i + 1) % poly.size()];
      if (side_sign(prev, next, poly[i], eps) == 0) {
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      }
    }
  }
}

void rotate_to_lowest(std::vector<HybridPoint>& poly) {
  auto it = std::min_element(poly.begin(), poly.end(), [](const HybridPoint& a, const HybridPoint& b) {
    if (a.num.coords[0] != b.num.coords[0]) return a.num.coords[0] < b.num.coords[0];
    return a.num.coords[1] < b.num.coords[1];
  });
  std::rotate(poly.begin(), it, poly.end());
}

std::vector<HybridPoint> hybrid_parallelogram(const HybridPoint& origin, const HybridPoint& u, const HybridPoint& v) {
  std::vector<HybridPoint> p{origin, origin + u, origin + u + v, origin + v};
  if (cross(u.num, v.num).sign() < 0) std::reverse(p.begin(), p.end());
  return p;
}

std::vector<HybridPoint> hybrid_basis(const Direction& dir) {
  std::vector<HybridPoint> f;
  for (auto& s : symbolic_basis_vectors(dir.d)) f.push_back(make_hybrid(std::move(s), dir));
  return f;
}

void require_chamber(const Direction& dir, double eps) {
  dir.require_numeric("build_cells_d2");
  if (dir.d != 2) throw ChamberError("cells are built for d = 2");
  const Real& t1 = dir.theta[0];
  const Real& t2 = dir.theta[1];
  if ((t1 - t2).to_double() <= eps || (t1 - Real(1L, dir.precision)).to_double() <= eps)
    throw ChamberError("direction outside the chamber theta_1 > theta_2 > 0, theta_1 > 1");
}

}  // namespace

HybridPoint make_hybrid(SymbolicPoint p, const Direction& dir) {
  NumericPoint n;
  for (const auto& c : p.coords) n.coords.push_back(c.evaluate(dir.theta, dir.precision));
  return {std::move(p), std::move(n)};
}

RationalFunction CellPolygon::area() const {
  RationalFunction s(0);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    s += cross_sym(vertices[i].sym, vertices[(i + 1) % vertices.size()].sym);
  return s / RationalFunction(2);
}

std::vector<CellPolygon> build_cells_d2(const Direction& dir, double eps) {
  require_chamber(dir, eps);
  const auto f = hybrid_basis(dir);
  const HybridPoint origin = make_hybrid(sym_zero(2), dir);
  auto piece = [&](int letter) {
    std::vector<HybridPoint> g;
    for (int i = 1; i <= 3; ++i)
      if (i != letter) g.push_back(f[static_cast<std::size_t>(i - 1)]);
    return hybrid_parallelogram(origin, g[0], g[1]);
  };

  std::vector<CellPolygon> cells;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      auto target = piece(j);
      for (auto& p : target) p = p - f[static_cast<std::size_t>(i - 1)];
      auto poly = clip(piece(i), target, dir, eps);
      clean(poly, eps);
      if (poly.size() < 3) continue;
      CellPolygon cell{std::to_string(i) + std::to_string(j), std::move(poly)};
      if (cell.area().is_zero()) continue;
      rotate_to_lowest(cell.vertices);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

CellPolygon window_polygon(const Direction& dir) {
  dir.require_numeric("window_polygon");
  if (dir.d != 2) throw std::invalid_argument("the window polygon is planar (d = 2)");
  const auto f = hybrid_basis(dir);
  std::vector<HybridPoint> sums;
  for (unsigned mask = 0; mask < 8; ++mask) {
    HybridPoint p = make_hybrid(sym_zero(2), dir);
    for (unsigned i = 0; i < 3; ++i)
      if (mask & (1u << i)) p = p + f[i];
    sums.push_back(std::move(p));
  }
  std::vector<NumericPoint> pts;
  for (const auto& s : sums) pts.push_back(s.num);
  const Polygon hull = convex_hull(pts);
  CellPolygon w{"W", {}};
  for (const auto& h : hull)
    for (const auto& s : sums)
      if (s.num == h) {
        w.vertices.push_back(s);
        break;
      }
  rotate_to_lowest(w.vertices);
  return w;
}

std::optional<SymbolicPoint> symmetry_center(const CellPolygon& poly) {
  const std::size_t n = poly.size();
  if (n < 2 || n % 2 != 0) return std::nullopt;
  const std::size_t k = n / 2;
  const SymbolicPoint twice = poly.vertices[0].sym + poly.vertices[k].sym;
  for (std::size_t i = 1; i < k; ++i)
    if (!(poly.vertices[i].sym + poly.vertices[i + k].sym == twice)) return std::nullopt;
  return RationalFunction(mpq_class(1, 2)) * twice;
}

std::optional<IntegerWitness> group_membership(const SymbolicPoint& v) {
  const int d = static_cast<int>(v.coords.size());
  IntegerWitness n(static_cast<std::size_t>(d) + 1, 0);
  std::optional<long> shared;
  for (int j = 1; j <= d; ++j) {
    auto pat = integer_affine_pattern(v.coords[static_cast<std::size_t>(j - 1)], j);
    if (!pat) return std::nullopt;
    if (shared && *shared != pat->second) return std::nullopt;
    shared = pat->second;
    n[static_cast<std::size_t>(j)] = pat->first;
  }
  n[0] = shared ? -*shared : 0;
  return n;
}

bool verify_group_witness(const SymbolicPoint& v, const IntegerWitness& n) {
  const int d = static_cast<int>(v.coords.size());
  if (n.size() != static_cast<std::size_t>(d) + 1) return false;
  const auto f = symbolic_basis_vectors(d);
  SymbolicPoint s = sym_zero(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < n.size(); ++i) s += RationalFunction(n[i]) * f[i];
  return s == v;
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Holds:
      return "holds";
    case Decision::Fails:
      return "fails";
    case Decision::Undetermined:
      return "undetermined";
  }
  return "?";
}

namespace {

// Index of a coordinate of u that is exactly nonzero, preferring the largest numeric value.
std::size_t pivot_coordinate(const HybridPoint& u) {
  std::size_t best = u.sym.coords.size();
  double best_abs = -1;
  for (std::size_t j = 0; j < u.sym.coords.size(); ++j) {
    if (u.sym.coords[j].is_zero()) continue;
    double a = std::fabs(u.num.coords[j].to_double());
    if (a > best_abs) {
      best = j;
      best_abs = a;
    }
  }
  if (best == u.sym.coords.size()) throw DegenerateError("zero edge vector");
  return best;
}

enum class Fit { Inside, Outside, Unknown };

}  // namespace

Condition1Result parallel_edge_condition1(const Segment& e, const Segment& e2, const Direction& dir, double eps,
                                          long box) {
  Condition1Result out;
  const std::size_t d = e.from.sym.coords.size();
  if (d != 2) throw std::invalid_argument("edge condition is planar");
  HybridPoint u = e.to - e.from;
  HybridPoint q0 = e2.from, q1 = e2.to;
  HybridPoint u2 = q1 - q0;
  if (!cross_sym(u.sym, u2.sym).is_zero()) throw std::invalid_argument("edges are not parallel");
  const std::size_t j = pivot_coordinate(u);
  RationalFunction lambda = u2.sym.coords[j] / u.sym.coords[j];
  if (lambda.evaluate(dir.theta, dir.precision).sign() < 0) {
    std::swap(q0, q1);
    lambda = -lambda;
  }
  const double lambda_num = lambda.evaluate(dir.theta, dir.precision).to_double();
  const HybridPoint dvec = q0 - e.from;

  // cross(sum n_i f_i - D, u) = 0, cleared of denominators.
  const auto f = symbolic_basis_vectors(2);
  std::vector<RationalFunction> c;
  for (const auto& fi : f) c.push_back(cross_sym(fi, u.sym));
  RationalFunction r = cross_sym(dvec.sym, u.sym);
  Polynomial common(1);
  for (const auto& x : c) common *= x.denominator();
  common *= r.denominator();
  std::vector<Polynomial> cp;
  for (const auto& x : c) {
    RationalFunction y = x * RationalFunction(common);
    if (!y.is_polynomial()) throw std::logic_error("denominator clearing failed");
    cp.push_back(y.numerator() * (1 / mpq_class(y.denominator().constant_term())));
  }
  RationalFunction ry = r * RationalFunction(common);
  Polynomial rp = ry.numerator() * (1 / mpq_class(ry.denominator().constant_term()));

  std::vector<Monomial> monos;
  auto add_monos = [&](const Polynomial& p) {
    for (const auto& [m, coeff] : p.terms())
      if (std::find(monos.begin(), monos.end(), m) == monos.end()) monos.push_back(m);
  };
  for (const auto& p : cp) add_monos(p);
  add_monos(rp);
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  for (const auto& m : monos) {
    std::vector<mpq_class> row;
    for (const auto& p : cp) row.push_back(p.coefficient(m));
    rows.push_back(std::move(row));
    rhs.push_back(rp.coefficient(m));
  }
  auto sol = solve_integer_system(rows, rhs, 3);
  if (!sol) {
    out.decision = Decision::Fails;
    out.detail = "no group element lies on the line through the edge offset";
    return out;
  }
  out.kernel_rank = sol->kernel.size();

  // w(n) = (sum n_i f_i - D)_j / u_j
  auto shift_of = [&](const std::vector<mpz_class>& n, bool affine) {
    RationalFunction w(0);
    for (std::size_t i = 0; i < 3; ++i) w += RationalFunction(mpq_class(n[i])) * f[i].coords[j];
    if (affine) w -= dvec.sym.coords[j];
    return w / u.sym.coords[j];
  };
  auto fit = [&](const RationalFunction& w) {
    const double v = w.evaluate(dir.theta, dir.precision).to_double();
    if (v > -1 + eps && v < lambda_num - eps) return Fit::Inside;
    if (v < -1 - eps || v > lambda_num + eps) return Fit::Outside;
    if (w == RationalFunction(-1) || w == lambda) return Fit::Inside;
    return Fit::Unknown;
  };
  bool unknown = false;
  auto accept = [&](const std::vector<mpz_class>& n) {
    RationalFunction w = shift_of(n, true);
    Fit ft = fit(w);
    if (ft == Fit::Unknown) unknown = true;
    if (ft != Fit::Inside) return false;
    auto wit = to_witness(n);
    if (!wit) {
      unknown = true;
      return false;
    }
    // g - D == w u, exactly.
    SymbolicPoint g = sym_zero(2);
    for (std::size_t i = 0; i < 3; ++i) g += RationalFunction((*wit)[i]) * f[i];
    if (!(g - dvec.sym == w * u.sym)) throw std::logic_error("condition (1) witness does not verify");
    out.decision = Decision::Holds;
    out.witness = *wit;
    out.shift = w;
    out.shift_value = w.evaluate(dir.theta, dir.precision).to_double();
    return true;
  };
  auto combine = [&](const std::vector<long>& k) {
    std::vector<mpz_class> n = sol->particular;
    for (std::size_t b = 0; b < k.size(); ++b)
      for (std::size_t i = 0; i < 3; ++i) n[i] += sol->kernel[b][i] * k[b];
    return n;
  };

  if (sol->kernel.empty()) {
    if (accept(sol->particular)) return out;
  } else if (sol->kernel.size() == 1) {
    const double w0 = shift_of(sol->particular, true).evaluate(dir.theta, dir.precision).to_double();
    const double delta = shift_of(sol->kernel[0], false).evaluate(dir.theta, dir.precision).to_double();
    if (std::fabs(delta) <= eps) {
      if (accept(sol->particular)) return out;
    } else {
      double a = (-1 - w0) / delta, b = (lambda_num - w0) / delta;
      if (a > b) std::swap(a, b);
      const long lo = static_cast<long>(std::floor(a)) - 1, hi = static_cast<long>(std::ceil(b)) + 1;
      if (hi - lo > 1000000) {
        unknown = true;
      } else {
        for (long k = lo; k <= hi; ++k)
          if (accept(combine({k}))) return out;
      }
    }
  } else {
    // Box scan over the kernel coordinates.
    const std::size_t r = sol->kernel.size();
    std::vector<long> k(r, -box);
    for (;;) {
      if (accept(combine(k))) return out;
      std::size_t pos = 0;
      while (pos < r && k[pos] == box) k[pos++] = -box;
      if (pos == r) break;
      ++k[pos];
    }
    out.decision = Decision::Undetermined;
    out.detail = "no witness within the scan box |k| <= " + std::to_string(box);
    return out;
  }
  out.decision = unknown ? Decision::Undetermined : Decision::Fails;
  out.detail = unknown ? "a candidate shift lies within epsilon of the feasible interval"
                       : "no group element joins the two edges";
  return out;
}

const char* to_string(BRSStatus s) {
  switch (s) {
    case BRSStatus::NotBRS:
      return "NotBRS";
    case BRSStatus::BRS:
      return "BRS";
    case BRSStatus::Undetermined:
      return "Undetermined";
  }
  return "?";
}

const char* to_string(BRSReason r) {
  switch (r) {
    case BRSReason::NoSymmetryCenter:
      return "NoSymmetryCenter";
    case BRSReason::Condition1Fail:
      return "Condition1Fail";
    case BRSReason::Condition2Fail:
      return "Condition2Fail";
    case BRSReason::ParallelepipedCriterion:
      return "ParallelepipedCriterion";
    case BRSReason::KestenCriterion:
      return "KestenCriterion";
    case BRSReason::AllConditionsPass:
      return "AllConditionsPass";
    case BRSReason::NonConvex:
      return "NonConvex";
    case BRSReason::Degenerate:
      return "Degenerate";
    case BRSReason::ScanBoundExceeded:
      return "ScanBoundExceeded";
  }
  return "?";
}

BRSVerdict gl_polygon_verdict(const CellPolygon& poly, const Direction& dir, double eps, long box) {
  BRSVerdict v;
  const std::size_t n = poly.size();
  auto edge_name = [](std::size_t i) { return "edge " + std::to_string(i); };
  try {
    for (std::size_t i = 0; i < n; ++i) {
      if (side_sign(poly.vertices[i], poly.vertices[(i + 1) % n], poly.vertices[(i + 2) % n], eps) <= 0) {
        v.status = BRSStatus::Undetermined;
        v.reason = BRSReason::NonConvex;
        v.detail = "polygon is not strictly convex";
        return v;
      }
    }
    if (!symmetry_center(poly)) {
      v.status = BRSStatus::NotBRS;
      v.reason = BRSReason::NoSymmetryCenter;
      v.detail = n % 2 ? "odd number of vertices" : "opposite vertices are not symmetric about one point";
      return v;
    }
    std::vector<HybridPoint> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back(poly.vertices[(i + 1) % n] - poly.vertices[i]);

    bool undetermined = false;
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        const double c = cross(edges[i].num, edges[k].num).to_double();
        if (std::fabs(c) > eps) continue;
        if (!cross_sym(edges[i].sym, edges[k].sym).is_zero()) throw DegenerateError("edges nearly but not exactly parallel");
        const Segment e{poly.vertices[i], poly.vertices[(i + 1) % n]};
        const Segment e2{poly.vertices[k], poly.vertices[(k + 1) % n]};
        const std::string pair = edge_name(i) + " / " + edge_name(k);

        auto c1 = parallel_edge_condition1(e, e2, dir, eps, box);
        if (c1.decision == Decision::Fails) {
          v.status = BRSStatus::NotBRS;
          v.reason = BRSReason::Condition1Fail;
          v.edge_pair = {i, k};
          v.detail = pair + ": " + c1.detail;
          return v;
        }
        if (c1.decision == Decision::Undetermined) {
          undetermined = true;
          v.detail += pair + ": " + c1.detail + "; ";
        } else {
          v.witnesses.push_back({pair + " condition (1)", c1.witness});
        }

        const SymbolicPoint mid_diff =
            RationalFunction(mpq_class(1, 2)) * ((e2.from.sym + e2.to.sym) - (e.from.sym + e.to.sym));
        if (auto w = group_membership(mid_diff)) {
          v.witnesses.push_back({pair + " midpoints", *w});
          continue;
        }
        auto wu = group_membership(edges[i].sym);
        auto wk = group_membership(edges[k].sym);
        if (wu && wk) {
          v.witnesses.push_back({edge_name(i) + " vector", *wu});
          v.witnesses.push_back({edge_name(k) + " vector", *wk});
          continue;
        }
        if (!v.edge_pair) v.edge_pair = {i, k};
        failures.push_back(pair);
      }
    }
    if (!failures.empty()) {
      v.status = BRSStatus::NotBRS;
      v.reason = BRSReason::Condition2Fail;
      v.detail = "midpoints not related by the return group and edge vectors not in it: ";
      for (std::size_t i = 0; i < failures.size(); ++i) v.detail += (i ? ", " : "") + failures[i];
      return v;
    }
    if (undetermined) {
      v.status = BRSStatus::Undetermined;
      v.reason = BRSReason::ScanBoundExceeded;
      return v;
    }
    v.status = BRSStatus::BRS;
    v.reason = BRSReason::AllConditionsPass;
    return v;
  } catch (const DegenerateError& ex) {
    v.status = BRSStatus::Undetermined;
    v.reason = BRSReason::Degenerate;
    v.detail = ex.what();
    return v;
  }
}

std::vector<RationalFunction> torus_alpha_symbolic(int d) {
  RationalFunction s(1);
  for (int j = 1; j <= d; ++j) s += RationalFunction::variable(j);
  std::vector<RationalFunction> a;
  for (int j = 1; j <= d; ++j) a.push_back(RationalFunction::variable(j) / s);
  return a;
}

std::vector<Real> torus_alpha(const Direction& dir) {
  dir.require_numeric("torus_alpha");
  Real s(1L, dir.precision);
  for (const auto& t : dir.theta) s += t;
  std::vector<Real> a;
  for (const auto& t : dir.theta) a.push_back(t / s);
  return a;
}

std::vector<RationalFunction> torus_image(const SymbolicPoint& p) {
  const int d = static_cast<int>(p.coords.size());
  const auto alpha = torus_alpha_symbolic(d);
  RationalFunction total(0);
  for (const auto& c : p.coords) total += c;
  std::vector<RationalFunction> out;
  for (int j = 0; j < d; ++j) out.push_back(total * alpha[static_cast<std::size_t>(j)] - p.coords[static_cast<std::size_t>(j)]);
  return out;
}

std::optional<TorusWitness> torus_membership(const std::vector<RationalFunction>& x) {
  const int d = static_cast<int>(x.size());
  RationalFunction s(1);
  for (int j = 1; j <= d; ++j) s += RationalFunction::variable(j);
  TorusWitness w;
  std::optional<long> k;
  for (int j = 1; j <= d; ++j) {
    RationalFunction y = x[static_cast<std::size_t>(j - 1)] * s;
    if (!y.is_polynomial()) return std::nullopt;
    std::vector<mpq_class> lin(static_cast<std::size_t>(d) + 1, 0);  // constant, t_1..t_d
    for (const auto& [m, c] : y.numerator().terms()) {
      if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return std::nullopt;
      if (m.is_unit())
        lin[0] = c;
      else if (m.total_degree() == 1 && m.max_variable() <= d)
        lin[static_cast<std::size_t>(m.max_variable())] = c;
      else
        return std::nullopt;
    }
    const mpq_class z = lin[0];
    for (int l = 1; l <= d; ++l)
      if (l != j && lin[static_cast<std::size_t>(l)] != z) return std::nullopt;
    const mpq_class kj = lin[static_cast<std::size_t>(j)] - z;
    if (!kj.get_num().fits_slong_p()) return std::nullopt;
    if (k && *k != kj.get_num().get_si()) return std::nullopt;
    k = kj.get_num().get_si();
    w.z.push_back(z.get_num().get_si());
  }
  w.k = k.value_or(0);
  return w;
}

namespace {

RationalFunction symbolic_determinant(std::vector<std::vector<RationalFunction>> a) {
  const std::size_t n = a.size();
  RationalFunction det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return RationalFunction(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      RationalFunction f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

BRSVerdict parallelepiped_brs(const std::vector<std::vector<RationalFunction>>& generators) {
  const std::size_t d = generators.size();
  if (d == 0) throw std::invalid_argument("no generators");
  BRSVerdict v;
  for (std::size_t i = 0; i < d; ++i) {
    if (generators[i].size() != d) throw std::invalid_argument("generator has the wrong dimension");
    auto w = torus_membership(generators[i]);
    if (!w) throw std::invalid_argument("generator " + std::to_string(i + 1) + " is not in Z alpha + Z^d");
    IntegerWitness n{w->k};
    n.insert(n.end(), w->z.begin(), w->z.end());
    v.witnesses.push_back({"generator " + std::to_string(i + 1) + " (k; z)", n});
  }
  if (symbolic_determinant(generators).is_zero()) throw std::invalid_argument("generators are linearly dependent");
  v.status = BRSStatus::BRS;
  v.reason = BRSReason::ParallelepipedCriterion;
  return v;
}

BRSVerdict kesten_interval(const RationalFunction& length) {
  BRSVerdict v;
  v.reason = BRSReason::KestenCriterion;
  if (auto w = torus_membership({length})) {
    v.status = BRSStatus::BRS;
    v.witnesses.push_back({"length (k; z)", {w->k, w->z[0]}});
  } else {
    v.status = BRSStatus::NotBRS;
    v.detail = "length is not in Z alpha + Z";
  }
  return v;
}

DiscrepancySeries torus_visit_series(const std::vector<Real>& alpha, const std::vector<std::vector<Real>>& generators,
                                     const std::vector<std::size_t>& checkpoints) {
  const std::size_t d = alpha.size();
  if (generators.size() != d) throw std::invalid_argument("need d generators");
  if (checkpoints.empty()) throw std::invalid_argument("no checkpoints");
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("checkpoints must increase");
  const mpfr_prec_t prec = alpha[0].precision();

  // Columns are the generators; inverse by solving for each unit vector.
  Matrix<Real> g(d, std::vector<Real>(d, Real(prec)));
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) g[r][c] = generators[c][r];
  const Real vol = abs(determinant(g));
  if (vol.is_zero()) throw std::invalid_argument("degenerate parallelepiped");
  Matrix<Real> inv(d, std::vector<Real>(d, Real(prec)));
  for (std::size_t c = 0; c < d; ++c) {
    // Cramer: replace column c by each unit vector.
    for (std::size_t r = 0; r < d; ++r) {
      Matrix<Real> m = g;
      for (std::size_t i = 0; i < d; ++i) m[i][c] = Real(i == r ? 1L : 0L, prec);
      inv[c][r] = determinant(m) / determinant(g);
    }
  }
  std::vector<std::vector<double>> inv_d(d, std::vector<double>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) inv_d[r][c] = inv[r][c].to_double();

  // Integer shifts k with (x + k) possibly inside, x in [0,1)^d.
  std::vector<long> lo(d, 0), hi(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    double mn = 0, mx = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      double s = 0;
      for (std::size_t i = 0; i < d; ++i)
        if (mask & (std::size_t{1} << i)) s += generators[i][j].to_double();
      mn = std::min(mn, s);
      mx = std::max(mx, s);
    }
    lo[j] = static_cast<long>(std::floor(mn)) - 1;
    hi[j] = static_cast<long>(std::ceil(mx));
  }
  std::vector<std::vector<long>> shifts{{}};
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::vector<long>> next;
    for (const auto& s : shifts)
      for (long k = lo[j]; k <= hi[j]; ++k) {
        auto t = s;
        t.push_back(k);
        next.push_back(std::move(t));
      }
    shifts = std::move(next);
  }

  DiscrepancySeries s;
  s.factor = "parallelepiped";
  s.mu = vol;
  s.provenance = Provenance::Geometric;
  s.n_max = checkpoints.back();
  const long double mu = vol.to_long_double();

  std::vector<Real> x(d, Real(prec));
  std::vector<double> xd(d), c(d);
  Real tmp(prec);
  std::size_t count = 0, next = 0;
  double running = 0;
  constexpr double kBand = 1e-9;
  for (std::size_t n = 0; n < s.n_max; ++n) {
    for (std::size_t j = 0; j < d; ++j) {
      mpfr_mul_ui(tmp.get(), alpha[j].get(), static_cast<unsigned long>(n), MPFR_RNDN);
      mpfr_frac(x[j].get(), tmp.get(), MPFR_RNDN);
      if (x[j].sign() < 0) x[j] += Real(1L, prec);
      xd[j] = x[j].to_double();
    }
    for (const auto& k : shifts) {
      bool inside = true, marginal = false;
      for (std::size_t r = 0; r < d && inside; ++r) {
        double v = 0;
        for (std::size_t q = 0; q < d; ++q) v += inv_d[r][q] * (xd[q] + static_cast<double>(k[q]));
        c[r] = v;
        if (v < -kBand || v >= 1 + kBand) inside = false;
        if (std::fabs(v) <= kBand || std::fabs(v - 1) <= kBand) marginal = true;
      }
      if (inside && marginal) {
        // Full-precision half-open test.
        for (std::size_t r = 0; r < d && inside; ++r) {
          Real v(prec);
          for (std::size_t q = 0; q < d; ++q) v += inv[r][q] * (x[q] + Real(k[q], prec));
          if (v.sign() < 0 || v >= Real(1L, prec)) inside = false;
        }
      }
      if (inside) ++count;
    }
    const std::size_t m = n + 1;
    const double dval = static_cast<double>(static_cast<long double>(count) - static_cast<long double>(m) * mu);
    running = std::max(running, std::fabs(dval));
    while (next < checkpoints.size() && checkpoints[next] == m) {
      s.checkpoints.push_back({m, count, static_cast<double>(static_cast<long double>(m) * mu), dval, running});
      ++next;
    }
  }
  s.max_abs = running;
  return s;
}

std::size_t BRSReport::count(BRSStatus s, BRSReason r) const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [&](const CellReport& c) {
    return c.verdict.status == s && c.verdict.reason == r;
  }));
}

bool BRSReport::any_undetermined() const {
  return std::any_of(cells.begin(), cells.end(),
                     [](const CellReport& c) { return c.verdict.status == BRSStatus::Undetermined; });
}

BRSReport brs_report(const Direction& dir, double eps, long box) {
  BRSReport rep;
  rep.direction = dir.text;
  rep.caveat = irrationality_caveat(dir);
  const ChamberReduction red = reduce_to_chamber(dir, eps);
  rep.permuted = red.permuted;
  rep.to_original = red.to_original;
  rep.chamber_direction = red.reduced.text;
  if (red.permuted)
    rep.notes.push_back("Direction relabeled into the chamber theta_1 > theta_2 > 0, theta_1 > 1 (chamber letters 1,2,3 = original " +
                        std::to_string(red.to_original[0]) + "," + std::to_string(red.to_original[1]) + "," +
                        std::to_string(red.to_original[2]) + "); cell coordinates refer to the chamber direction.");
  rep.notes.push_back("Membership decisions are exact over Q(t1,t2); a NotBRS verdict is generic and assumes 1, theta_1, theta_2 rationally independent.");

  const Real window = window_volume(red.reduced);
  for (auto& cell : build_cells_d2(red.reduced, eps)) {
    CellReport cr;
    cr.verdict = gl_polygon_verdict(cell, red.reduced, eps, box);
    cr.area_share = cell.area().evaluate(red.reduced.theta, red.reduced.precision) / window;
    std::string label;
    for (char ch : cell.label) label.push_back(static_cast<char>('0' + red.to_original[static_cast<std::size_t>(ch - '1')]));
    cell.label = label;
    cr.cell = std::move(cell);
    rep.cells.push_back(std::move(cr));
  }
  return rep;
}

}  // namespace billiard
