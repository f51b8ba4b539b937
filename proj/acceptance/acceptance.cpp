#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "billiard/balance.hpp"
#include "billiard/brs.hpp"
#include "billiard/dynamics.hpp"
#include "billiard/language.hpp"

using namespace billiard;

namespace {

constexpr double kEps = kDefaultEpsilon;
constexpr std::uint64_t kSeed = 42;
// "no increase" between checkpoints, relative to the earlier running max
constexpr double kStableTolerance = 0.01;

struct Outcome {
  bool pass = false;
  std::string detail;
  bool blocking = true;
};

const Direction& cubic() {
  static const Direction dir = parse_direction("1,sqrt(3),sqrt(2)");
  return dir;
}

const std::string& cubic_word() {
  static const std::string w = generate_generic_word(cubic(), kSeed, 0, 1000000, kEps).word.letters;
  return w;
}

RationalFunction t(int k) { return RationalFunction::variable(k); }
RationalFunction q(long a, long b = 1) { return RationalFunction(mpq_class(a, b)); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Pair frequencies as tabulated, in double.
double tabulated_pair(const std::string& w) {
  const double t1 = std::sqrt(3.0), t2 = std::sqrt(2.0), s = 1 + t1 + t2;
  if (w == "13" || w == "31") return t2 / (2 * t1 * s);
  if (w == "12" || w == "21") return (2 * t1 - t2) / (2 * t1 * s);
  if (w == "23" || w == "32") return t2 * (2 * t1 - 1) / (2 * t1 * s);
  if (w == "22") return (t1 - 1) * (t1 - t2) / (t1 * s);
  return 0;
}

Outcome c1_seven_factors() {
  auto tab = factor_table(cubic_word(), 2);
  std::set<std::string> seen;
  for (const auto& [w, c] : tab.counts) seen.insert(w);
  const std::set<std::string> want{"12", "21", "13", "31", "23", "32", "22"};
  std::string list;
  for (const auto& w : seen) list += w + " ";
  return {seen == want, "factors: " + list};
}

Outcome c2_letter_balance() {
  const double t1 = std::sqrt(3.0), t2 = std::sqrt(2.0), s = 1 + t1 + t2;
  const double mu[3] = {1 / s, t1 / s, t2 / s};
  bool ok = true;
  std::string detail;
  for (int a = 1; a <= 3; ++a) {
    const double bound = mu[a - 1] * (2 + t1 + t2);
    FrequencyValue f{letter_frequency(cubic(), a), Provenance::ClosedForm};
    auto series = discrepancy_series(cubic_word(), std::string(1, static_cast<char>('0' + a)), f, {1000000}, 0, bound);
    ok = ok && series.violations == 0;
    detail += fmt("a=%.0f max=%.4f C=%.4f; ", a, series.max_abs, bound);
  }
  return {ok, detail};
}

Outcome c3_frequency_table() {
  auto tab = factor_table(cubic_word(), 2);
  double worst = 0;
  for (const auto& w : {"12", "21", "13", "31", "23", "32", "22"}) {
    const double emp = static_cast<double>(tab.count(w)) / static_cast<double>(tab.total());
    worst = std::max(worst, std::fabs(emp - tabulated_pair(w)));
  }
  RationalFunction sum(0);
  for (const auto& w : length2_factors_d2()) sum += pair_frequency_symbolic(w);
  const bool exact = sum == RationalFunction(1);
  return {worst <= 1e-3 && exact, fmt("max abs error %.2e; symbolic sum ", worst) + (exact ? "= 1" : "!= 1")};
}

Outcome c4_unbalance() {
  auto tab = factor_table(cubic_word(), 2);
  auto mu = reference_frequency(cubic(), "22", tab, kEps);
  auto s = discrepancy_series(cubic_word(), "22", mu, {10000, 100000, 1000000});
  const double a = s.checkpoints[0].running_max, c = s.checkpoints[2].running_max;
  return {c >= 1.5 * a,
          fmt("running max %.3f at 1e4, %.3f at 1e6, ratio %.2f", a, c, c / a) +
              " (finite data: growth is evidence, boundedness cannot be refuted)"};
}

Outcome c5_sturmian() {
  Direction golden = parse_direction("1,(sqrt(5)-1)/2");
  auto word = generate_generic_word(golden, kSeed, 0, 1000000, kEps).word.letters;
  double worst = 0;
  std::size_t n_factors = 0;
  for (std::size_t len = 1; len <= 4; ++len) {
    auto tab = factor_table(word, len);
    for (const auto& [w, c] : tab.counts) {
      auto mu = reference_frequency(golden, w, tab, kEps);
      auto s = discrepancy_series(word, w, mu, {100000, 1000000});
      const double a = s.checkpoints[0].running_max, b = s.checkpoints[1].running_max;
      worst = std::max(worst, (b - a) / std::max(a, 1e-300));
      ++n_factors;
    }
  }
  return {worst <= kStableTolerance,
          fmt("%.0f factors; largest relative increase 1e5 -> 1e6: %.2e (tolerance %.0e)", static_cast<double>(n_factors), worst,
              kStableTolerance)};
}

Outcome c6_brs_verdicts() {
  auto rep = brs_report(cubic(), kEps);
  const std::size_t nosym = rep.count(BRSStatus::NotBRS, BRSReason::NoSymmetryCenter);
  const std::size_t cond2 = rep.count(BRSStatus::NotBRS, BRSReason::Condition2Fail);
  bool on22 = false;
  for (const auto& c : rep.cells)
    if (c.cell.label == "22") on22 = c.verdict.reason == BRSReason::Condition2Fail;
  return {rep.cells.size() == 7 && nosym == 6 && cond2 == 1 && on22,
          fmt("%.0f cells: %.0f NoSymmetryCenter, %.0f Condition2Fail", static_cast<double>(rep.cells.size()),
              static_cast<double>(nosym), static_cast<double>(cond2)) +
              (on22 ? " (on 22)" : "")};
}

Outcome c7_membership() {
  const auto f = symbolic_basis_vectors(2);
  const SymbolicPoint K = q(-1) * f[1];
  const SymbolicPoint B = f[0] + (t(2) / t(1)) * f[2];
  const SymbolicPoint C = f[0] + f[2];
  const SymbolicPoint D = f[2] + (q(1) / t(1)) * f[0];
  auto w1 = group_membership(f[0]);
  auto ck = group_membership(C - K);
  const bool ok = w1 && *w1 == IntegerWitness{1, 0, 0} && !group_membership(B) && !group_membership(D) && ck &&
                  *ck == IntegerWitness{1, 1, 1} && verify_group_witness(C - K, *ck);
  return {ok, "f1 -> (1,0,0); OB, OD outside; C-K -> (1,1,1)"};
}

Outcome c8_cell_geometry() {
  auto cells = build_cells_d2(cubic(), kEps);
  const auto f = symbolic_basis_vectors(2);
  const SymbolicPoint K = q(-1) * f[1];
  const SymbolicPoint A = f[0];
  bool edge_ok = false, ab_ok = false;
  double worst = 0;
  const double window = 1 + std::sqrt(3.0) + std::sqrt(2.0);
  for (const auto& c : cells) {
    const double share = c.area().evaluate(cubic().theta, cubic().precision).to_double() / window;
    worst = std::max(worst, std::fabs(share - tabulated_pair(c.label)) / tabulated_pair(c.label));
    if (c.label != "22") continue;
    // B is the vertex with B - K parallel to f_1
    for (const auto& v : c.vertices) {
      const SymbolicPoint kb = v.sym - K;
      if (kb == (q(1) - q(1) / t(1)) * f[0]) edge_ok = true;
      if (v.sym - A == (t(2) / t(1)) * f[2]) ab_ok = true;
    }
  }
  return {edge_ok && ab_ok && worst <= 1e-9,
          std::string("KB = (1 - 1/t1) f1: ") + (edge_ok ? "yes" : "no") + ", AB = (t2/t1) f3: " + (ab_ok ? "yes" : "no") +
              fmt(", area/frequency max relative error %.1e", worst)};
}

Outcome c9_unfolding() {
  BilliardState s = billiard_start(cubic(), kSeed);
  const std::string bounce = billiard_simulate(s, cubic(), 100000, kEps);
  const std::string coded = generate_generic_word(cubic(), kSeed, 0, 100000, kEps).word.letters;
  bool ok = true;
  std::size_t sizes = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    std::set<std::string> a, b;
    for (std::size_t i = 0; i + n <= bounce.size(); ++i) a.insert(bounce.substr(i, n));
    for (std::size_t i = 0; i + n <= coded.size(); ++i) b.insert(coded.substr(i, n));
    ok = ok && a == b;
    sizes = a.size();
  }
  return {ok, fmt("factor sets equal for n <= 8 (%.0f factors of length 8)", static_cast<double>(sizes))};
}

Outcome c10_parallelepiped() {
  auto sym = torus_alpha_symbolic(2);
  auto cert = parallelepiped_brs({sym, {sym[0] + q(1), sym[1]}});
  auto alpha = torus_alpha(cubic());
  std::vector<Real> g2{alpha[0] + Real(1L, cubic().precision), alpha[1]};
  auto s = torus_visit_series(alpha, {alpha, g2}, {100000, 1000000});
  const double a = s.checkpoints[0].running_max, b = s.checkpoints[1].running_max;
  const double rel = (b - a) / a;
  return {cert.status == BRSStatus::BRS && rel <= kStableTolerance,
          fmt("running max %.4f at 1e5, %.4f at 1e6 (relative increase %.2e)", a, b, rel)};
}

Outcome c11_eigenvalues() {
  auto mu2 = eigenvalue_group_membership(letter_frequency_symbolic(2, 2), 2);
  const bool ok = mu2 && *mu2 == IntegerWitness{0, 1, 0} &&
                  !eigenvalue_group_membership(pair_frequency_symbolic("31"), 2) &&
                  !eigenvalue_group_membership(pair_frequency_symbolic("22"), 2);
  return {ok, "mu[2] -> (0,1,0); mu[31], mu[22] outside"};
}

Outcome c12_higher_dimension() {
  auto rep = balance_report(parse_direction("1,sqrt(2),sqrt(3),sqrt(5)"), 3, 1000000, kSeed, kEps);
  std::size_t letters = 0, certified = 0;
  for (const auto& e : rep.entries) {
    if (e.series.factor.size() != 1) continue;
    ++letters;
    certified += e.verdict.kind == VerdictKind::CertifiedBounded;
  }
  const std::size_t growth = rep.count(VerdictKind::GrowthDetected);
  std::string detail = fmt("%.0f/%.0f letters certified; %.0f factors GrowthDetected", static_cast<double>(certified),
                           static_cast<double>(letters), static_cast<double>(growth));
  if (growth == 0) detail += " (growth part is non-blocking)";
  return {letters == 4 && certified == 4, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"seven length-2 factors", c1_seven_factors},
      {"certified letter balance", c2_letter_balance},
      {"frequency table", c3_frequency_table},
      {"unbalance of factor 22", c4_unbalance},
      {"Sturmian control", c5_sturmian},
      {"BRS verdicts", c6_brs_verdicts},
      {"symbolic membership", c7_membership},
      {"cell geometry", c8_cell_geometry},
      {"unfolding equivalence", c9_unfolding},
      {"parallelepiped BRS", c10_parallelepiped},
      {"eigenvalue-group membership", c11_eigenvalues},
      {"higher-dimensional smoke test", c12_higher_dimension},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2zu  %-30s  %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && o.blocking) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed ? 1 : 0;
}
