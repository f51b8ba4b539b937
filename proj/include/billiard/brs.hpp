#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "billiard/balance.hpp"
#include "billiard/diophantine.hpp"
#include "billiard/direction.hpp"
#include "billiard/geometry.hpp"
#include "billiard/rational_function.hpp"

namespace billiard {

/// Exact point of Q(t_1, t_2)^2 with its value at the working direction.
struct HybridPoint {
  SymbolicPoint sym;
  NumericPoint num;
};

HybridPoint make_hybrid(SymbolicPoint p, const Direction& dir);

/// A numeric predicate fell within eps of zero but the exact value is not zero.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Convex cell, vertices counter-clockwise, no repeated or collinear vertices.
struct CellPolygon {
  std::string label;
  std::vector<HybridPoint> vertices;

  std::size_t size() const { return vertices.size(); }
  RationalFunction area() const;  // exact, positive for counter-clockwise order
};

/// Cells W^(i) intersected with W^(j) - f_i, labeled "ij", for a d = 2
/// direction in the chamber theta_1 > theta_2 > 0, theta_1 > 1. Empty
/// intersections are dropped. Throws ChamberError outside the chamber and
/// DegenerateError when an orientation test is not decided.
std::vector<CellPolygon> build_cells_d2(const Direction& dir, double eps);

/// The hexagon W_theta itself (d = 2), as a cell labeled "W".
CellPolygon window_polygon(const Direction& dir);

/// Center c with v_{i + n/2} - c = c - v_i for every i (exact), if any.
std::optional<SymbolicPoint> symmetry_center(const CellPolygon& poly);

/// Coefficients n with v = sum_i n_i f_i, decided exactly; std::nullopt when v
/// is not in the return group Z f_1 + ... + Z f_{d+1}.
std::optional<IntegerWitness> group_membership(const SymbolicPoint& v);
/// sum_i n_i f_i == v exactly.
bool verify_group_witness(const SymbolicPoint& v, const IntegerWitness& n);

struct Segment {
  HybridPoint from;
  HybridPoint to;
};

enum class Decision { Holds, Fails, Undetermined };
const char* to_string(Decision d);

struct Condition1Result {
  Decision decision = Decision::Undetermined;
  IntegerWitness witness;              // g = sum n_i f_i with g = q - p
  std::optional<RationalFunction> shift;  // w with g = (e2.from - e.from) + w u
  double shift_value = 0;
  std::size_t kernel_rank = 0;
  std::string detail;
};

/// Existence of p on e and q on e2 with q - p in the return group. Writing
/// u = e.to - e.from and orienting e2 along u with length ratio lambda > 0,
/// the candidates are g = D + w u with D = e2.from - e.from and w in
/// [-1, lambda]. The condition cross(g - D, u) = 0 is matched monomial by
/// monomial into an integer system; its solution lattice is searched exactly
/// for kernel rank <= 1 and in the box |k_i| <= box otherwise.
Condition1Result parallel_edge_condition1(const Segment& e, const Segment& e2, const Direction& dir, double eps,
                                          long box = 10);

enum class BRSStatus { NotBRS, BRS, Undetermined };
enum class BRSReason {
  NoSymmetryCenter,
  Condition1Fail,
  Condition2Fail,
  ParallelepipedCriterion,
  KestenCriterion,
  AllConditionsPass,
  NonConvex,
  Degenerate,
  ScanBoundExceeded,
};
const char* to_string(BRSStatus s);
const char* to_string(BRSReason r);

struct LabeledWitness {
  std::string what;
  IntegerWitness n;
};

struct BRSVerdict {
  BRSStatus status = BRSStatus::Undetermined;
  BRSReason reason = BRSReason::Degenerate;
  std::optional<std::pair<std::size_t, std::size_t>> edge_pair;  // edge i joins vertex i to i+1
  std::vector<LabeledWitness> witnesses;
  std::string detail;
};

/// Convex-polygon criterion: a centre of symmetry, and for every pair of
/// parallel edges (1) points related by the return group and (2) midpoints
/// related by the group or both edge vectors in the group.
BRSVerdict gl_polygon_verdict(const CellPolygon& poly, const Direction& dir, double eps, long box = 10);

/// Torus picture: the internal plane maps onto R^d with f_1 -> alpha and
/// f_{j+1} -> alpha - e_j, alpha = (t_j / (1 + sum t)), carrying the return
/// group onto Z alpha + Z^d.
std::vector<RationalFunction> torus_alpha_symbolic(int d);
std::vector<Real> torus_alpha(const Direction& dir);
std::vector<RationalFunction> torus_image(const SymbolicPoint& p);

struct TorusWitness {
  long k = 0;            // coefficient of alpha
  std::vector<long> z;   // integer translation
};
/// x = k alpha + z with integer k, z, decided exactly.
std::optional<TorusWitness> torus_membership(const std::vector<RationalFunction>& x);

/// Parallelepiped spanned by d vectors of Z alpha + Z^d: BRS. Throws
/// std::invalid_argument when a generator is not certified or the vectors
/// are dependent.
BRSVerdict parallelepiped_brs(const std::vector<std::vector<RationalFunction>>& generators);

/// d = 1: an interval of length l is BRS iff l is in Z alpha + Z.
BRSVerdict kesten_interval(const RationalFunction& length);

/// Visits of 0, alpha, 2 alpha, ... (mod Z^d) to the half-open parallelepiped
/// {sum c_i g_i : c_i in [0, 1)}, counted with multiplicity; D_n = visits
/// among the first n points minus n vol.
DiscrepancySeries torus_visit_series(const std::vector<Real>& alpha, const std::vector<std::vector<Real>>& generators,
                                     const std::vector<std::size_t>& checkpoints);

/// Verdict for one cell with its numeric area share of the window.
struct CellReport {
  CellPolygon cell;
  BRSVerdict verdict;
  Real area_share;
};

struct BRSReport {
  std::string direction;
  std::string chamber_direction;
  bool permuted = false;
  std::array<int, 3> to_original{1, 2, 3};
  std::string caveat;
  std::vector<CellReport> cells;
  std::vector<std::string> notes;

  std::size_t count(BRSStatus s, BRSReason r) const;
  bool any_undetermined() const;
};

/// Reduces to the chamber, builds the cells, and decides each one.
BRSReport brs_report(const Direction& dir, double eps, long box = 10);

}  // namespace billiard
